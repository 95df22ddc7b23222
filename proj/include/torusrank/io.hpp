/*
 * JSON file formats: lattices, complexes, periodic triangulations, cochains,
 * and determinant decompositions. Writers are canonical (fixed key order,
 * cells ascending by id, 2-space indent) so save -> load -> save is byte
 * exact. Rationals travel as "p/q" strings, "p" when the denominator is 1.
 */
#ifndef TORUSRANK_IO_HPP
#define TORUSRANK_IO_HPP

#include <string>

#include "torusrank/cellcomplex.hpp"
#include "torusrank/detdecomp.hpp"
#include "torusrank/lattice.hpp"
#include "torusrank/periodic.hpp"

namespace torusrank {

std::string lattice_to_json(const Lattice& L);
Lattice lattice_from_json(const std::string& text);

std::string complex_to_json(const SimplicialCellComplex& X);
SimplicialCellComplex complex_from_json(const std::string& text);

std::string periodic_to_json(const PeriodicTriangulation& T);
PeriodicTriangulation periodic_from_json(const std::string& text);

std::string cochain_to_json(const CochainF2& a);
std::string cochain_to_json(const CochainQ& a);

struct TaggedCochain {
    Field field = Field::F2;
    CochainF2 f2;
    CochainQ q;
};
TaggedCochain cochain_from_json(const std::string& text);

std::string decomposition_to_json(const DetDecomposition& D);
DetDecomposition decomposition_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace torusrank

#endif
