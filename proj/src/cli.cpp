#include "torusrank/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusrank/cohomology.hpp"
#include "torusrank/io.hpp"

namespace torusrank::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

uint64_t fnv1a64(const std::string& bytes, uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return std::string("fnv1a64:") + buf;
}

long long env_budget(long long fallback) {
    if (const char* s = std::getenv("TORUSRANK_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return fallback;
}

struct SourceSpec {
    enum Kind { Staircase, CrystalTorus, TriTorus, Rp, File } kind = File;
    int n = 0;
    std::string path; // for File
    std::string raw;
};

SourceSpec parse_source(const std::string& s) {
    SourceSpec spec;
    spec.raw = s;
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
        bool numeric = !tail.empty() &&
                       std::all_of(tail.begin(), tail.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
        if (numeric) {
            int n = std::stoi(tail);
            if (head == "staircase")
                return {SourceSpec::Staircase, n, "", s};
            if (head == "crystal-torus")
                return {SourceSpec::CrystalTorus, n, "", s};
            if (head == "tri-torus")
                return {SourceSpec::TriTorus, n, "", s};
            if (head == "rp")
                return {SourceSpec::Rp, n, "", s};
        }
    }
    spec.kind = SourceSpec::File;
    spec.path = s;
    return spec;
}

std::string source_digest(const SourceSpec& s) {
    if (s.kind == SourceSpec::File) {
        try {
            return hex64(fnv1a64(read_file(s.path)));
        } catch (const Error&) {
            // the command itself reports unreadable files
        }
    }
    return hex64(fnv1a64(s.raw));
}

struct GenCaps {
    int staircase = 8;
    int crystal = 7;
    int tri = 6;
    int rp = 10;
};

QuotientComplex build_quotient_source(const SourceSpec& s) {
    const GenCaps caps;
    switch (s.kind) {
    case SourceSpec::CrystalTorus:
        if (s.n < 1 || s.n > caps.crystal)
            throw Error(ErrorKind::Budget, "crystal-torus n out of range (1.." +
                                               std::to_string(caps.crystal) + ")");
        return quotient(staircase(s.n), matrix_A(s.n));
    case SourceSpec::TriTorus:
        if (s.n < 2 || s.n > caps.tri)
            throw Error(ErrorKind::Budget,
                        "tri-torus n out of range (2.." + std::to_string(caps.tri) + ")");
        return quotient(staircase(s.n), matrix_B(s.n));
    default:
        throw Error(ErrorKind::Domain, "source is not a torus quotient generator");
    }
}

SimplicialCellComplex build_complex_source(const SourceSpec& s) {
    const GenCaps caps;
    switch (s.kind) {
    case SourceSpec::Rp:
        if (s.n < 1 || s.n > caps.rp)
            throw Error(ErrorKind::Budget,
                        "rp n out of range (1.." + std::to_string(caps.rp) + ")");
        return cross_polytope_rp(s.n);
    case SourceSpec::CrystalTorus:
    case SourceSpec::TriTorus:
        return build_quotient_source(s).complex;
    case SourceSpec::File:
        return complex_from_json(read_file(s.path));
    default:
        throw Error(ErrorKind::Domain, "source does not produce a cell complex");
    }
}

PeriodicTriangulation build_periodic_source(const SourceSpec& s) {
    const GenCaps caps;
    switch (s.kind) {
    case SourceSpec::Staircase:
        if (s.n < 1 || s.n > caps.staircase)
            throw Error(ErrorKind::Budget,
                        "staircase n out of range (1.." + std::to_string(caps.staircase) + ")");
        return staircase(s.n);
    case SourceSpec::File: {
        return periodic_from_json(read_file(s.path));
    }
    default:
        throw Error(ErrorKind::Domain, "source is not a periodic triangulation");
    }
}

Lattice build_lattice_source(const SourceSpec& s) {
    auto colon = s.raw.find(':');
    if (colon != std::string::npos) {
        std::string head = s.raw.substr(0, colon), tail = s.raw.substr(colon + 1);
        bool numeric = !tail.empty() &&
                       std::all_of(tail.begin(), tail.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
        if (numeric && head == "A")
            return matrix_A(std::stoi(tail));
        if (numeric && head == "B")
            return matrix_B(std::stoi(tail));
    }
    if (s.kind == SourceSpec::File)
        return lattice_from_json(read_file(s.path));
    throw Error(ErrorKind::Domain, "lattice source must be a file, A:n, or B:n");
}

ordered_json fvec_json(const std::vector<long long>& f) {
    return ordered_json(f);
}

ordered_json forbidden_json(const ForbiddenVectorReport& r) {
    ordered_json j;
    j["family"] = family_name(r.family);
    j["vectors_checked"] = (long long)r.vectors_checked;
    ordered_json ws = ordered_json::array();
    for (const auto& w : r.witnesses) {
        ordered_json jw = ordered_json::array();
        for (const auto& x : w)
            jw.push_back((long long)x);
        ws.push_back(std::move(jw));
    }
    j["witnesses"] = std::move(ws);
    return j;
}

// ---- command handlers ------------------------------------------------

struct Outcome {
    ordered_json results = ordered_json::object();
    bool pass = true;
    int exit_code = 0;
    std::string text;
};

Outcome cmd_gen(const std::string& kind, int n, const std::string& out_path) {
    Outcome o;
    std::ostringstream text;
    o.results["kind"] = kind;
    o.results["n"] = n;
    if (kind == "staircase") {
        PeriodicTriangulation T = build_periodic_source(parse_source("staircase:" + std::to_string(n)));
        o.results["vertex_orbits"] = (long long)T.vertex_reps.size();
        o.results["simplex_orbits"] = (long long)T.simplex_reps.size();
        text << "staircase n=" << n << ": " << T.vertex_reps.size() << " vertex orbit(s), "
             << T.simplex_reps.size() << " simplex orbits\n";
        if (!out_path.empty())
            write_file(out_path, periodic_to_json(T));
    } else {
        SimplicialCellComplex X = build_complex_source(parse_source(kind + ":" + std::to_string(n)));
        auto v = X.validate();
        auto f = X.f_vector();
        o.results["f_vector"] = fvec_json(f);
        o.results["classification"] = classification_name(v.kind);
        o.results["euler_characteristic"] = X.euler_characteristic();
        text << kind << " n=" << n << ": f = (";
        for (size_t i = 0; i < f.size(); ++i)
            text << (i ? "," : "") << f[i];
        text << "), " << classification_name(v.kind) << "\n";
        if (!out_path.empty())
            write_file(out_path, complex_to_json(X));
        o.pass = v.kind != Classification::Invalid;
        if (!o.pass)
            o.exit_code = 2;
    }
    if (!out_path.empty()) {
        o.results["out"] = out_path;
        text << "wrote " << out_path << "\n";
    }
    o.text = text.str();
    return o;
}

Outcome cmd_inspect(const std::string& file, const std::string& field, bool with_betti) {
    Outcome o;
    SimplicialCellComplex X = complex_from_json(read_file(file));
    auto v = X.validate();
    auto f = X.f_vector();
    o.results["classification"] = classification_name(v.kind);
    if (!v.reason.empty())
        o.results["reason"] = v.reason;
    o.results["f_vector"] = fvec_json(f);
    o.results["euler_characteristic"] = X.euler_characteristic();
    std::ostringstream text;
    text << "classification: " << classification_name(v.kind);
    if (!v.reason.empty())
        text << " (" << v.reason << ")";
    text << "\nf-vector: (";
    for (size_t i = 0; i < f.size(); ++i)
        text << (i ? "," : "") << f[i];
    text << ")\neuler characteristic: " << X.euler_characteristic() << "\n";
    if (v.kind == Classification::Invalid) {
        o.pass = false;
        o.exit_code = 2;
        o.text = text.str();
        return o;
    }
    if (with_betti) {
        ordered_json betti = ordered_json::array();
        text << "betti (" << field << "):";
        for (int k = 0; k <= X.top_dim(); ++k) {
            int b = field == "q" ? betti_q(X, k) : betti_f2(X, k);
            betti.push_back(b);
            text << " " << b;
        }
        text << "\n";
        o.results["field"] = field == "q" ? "Q" : "F2";
        o.results["betti"] = std::move(betti);
    }
    o.text = text.str();
    return o;
}

ordered_json rank_bound_json(const RankBoundReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["lower_bound"] = rat_to_string(r.lower_bound);
    j["lower_ceiling"] = r.lower_ceiling.str();
    j["leibniz_count"] = r.leibniz_count.str();
    if (r.decomposition_length)
        j["decomposition_length"] = *r.decomposition_length;
    if (r.length_consistent)
        j["length_consistent"] = *r.length_consistent;
    return j;
}

Outcome cmd_detdecomp(const std::string& source, const std::string& mode, const std::string& eps,
                      const std::string& lattice_src, const std::string& out_path, bool verify,
                      int verify_cap) {
    Outcome o;
    std::ostringstream text;
    SourceSpec spec = parse_source(source);
    DetDecomposition D;
    if (mode == "lex") {
        D = decompose_periodic_lex(build_periodic_source(spec));
    } else if (mode == "quotient") {
        QuotientComplex Q =
            (spec.kind == SourceSpec::File && !lattice_src.empty())
                ? quotient(build_periodic_source(spec), build_lattice_source(parse_source(lattice_src)))
                : build_quotient_source(spec);
        D = decompose_from_quotient(Q);
    } else if (mode == "eps") {
        Rat e = rat_from_string(eps);
        EpsTermBoundReport rep = eps_term_bound(build_periodic_source(spec), e);
        o.results["eps"] = rat_to_string(rep.eps);
        o.results["diameter"] = rep.diameter.str();
        o.results["constant"] = rat_to_string(rep.constant);
        o.results["bound"] = rat_to_string(rep.bound);
        o.results["terms_total"] = rep.terms_total;
        o.results["identity_terms"] = rep.identity_terms;
        o.results["max_nonidentity_sup"] = rat_to_string(rep.max_nonidentity_sup);
        o.results["max_identity_dev"] = rat_to_string(rep.max_identity_dev);
        o.results["pass"] = rep.pass;
        if (!rep.pass)
            o.results["violation"] = rep.violation;
        text << "eps-subdivision bound: eps=" << rat_to_string(rep.eps)
             << " C=" << rat_to_string(rep.constant) << " bound=" << rat_to_string(rep.bound)
             << "\nterms: " << rep.terms_total << " (" << rep.identity_terms
             << " identity), max permuted sup " << rat_to_string(rep.max_nonidentity_sup)
             << ", max identity deviation " << rat_to_string(rep.max_identity_dev) << "\n"
             << (rep.pass ? "bounds hold\n" : "BOUND VIOLATED: " + rep.violation + "\n");
        o.pass = rep.pass;
        o.exit_code = rep.pass ? 0 : 3;
        o.text = text.str();
        return o;
    } else {
        throw Error(ErrorKind::Domain, "mode must be --lex, --quotient, or --eps");
    }

    o.results["n"] = D.n;
    o.results["terms"] = (long long)D.terms.size();
    o.results["provenance"] = D.provenance;
    text << "decomposition: n=" << D.n << ", " << D.terms.size() << " rank-one terms ("
         << D.provenance << ")\n";
    if (verify) {
        LeviCivitaResult r = verify_levi_civita(D, verify_cap);
        o.results["verified"] = r.exact_equal;
        if (r.exact_equal) {
            text << "verification: exact-equal against the permutation-sign tensor\n";
        } else {
            ordered_json mi = ordered_json::array();
            for (int x : r.mismatch_index)
                mi.push_back(x);
            o.results["mismatch_index"] = std::move(mi);
            o.results["got"] = rat_to_string(r.got);
            o.results["expected"] = rat_to_string(r.expected);
            text << "verification MISMATCH at index (";
            for (size_t i = 0; i < r.mismatch_index.size(); ++i)
                text << (i ? "," : "") << r.mismatch_index[i];
            text << "): got " << rat_to_string(r.got) << ", expected "
                 << rat_to_string(r.expected) << "\n";
            o.pass = false;
            o.exit_code = 3;
        }
        RankBoundReport rb = rank_bound_report(D.n, &D);
        o.results["rank_bound"] = rank_bound_json(rb);
        text << "rank bound: " << rat_to_string(rb.lower_bound) << " (ceiling "
             << rb.lower_ceiling.str() << "), leibniz " << rb.leibniz_count.str()
             << ", length " << D.terms.size()
             << (rb.length_consistent.value_or(false) ? " consistent" : " INCONSISTENT") << "\n";
    }
    if (!out_path.empty()) {
        write_file(out_path, decomposition_to_json(D));
        o.results["out"] = out_path;
        text << "wrote " << out_path << "\n";
    }
    o.text = text.str();
    return o;
}

Outcome cmd_latcheck(const std::string& source) {
    Outcome o;
    Lattice L = build_lattice_source(parse_source(source));
    o.results["n"] = L.n();
    o.results["determinant"] = determinant(L.basis()).str();
    o.results["index"] = L.index().str();
    std::ostringstream text;
    text << "lattice n=" << L.n() << ", det=" << determinant(L.basis()).str() << "\n";
    ordered_json fams = ordered_json::array();
    for (auto fam : {VectorFamily::ZeroOne, VectorFamily::ZeroOneTwo, VectorFamily::PlusMinusOne}) {
        auto r = forbidden_vector_check(L, fam);
        fams.push_back(forbidden_json(r));
        text << "  " << family_name(fam) << ": "
             << (r.clean() ? "no witnesses" : std::to_string(r.witnesses.size()) + " witness(es)");
        if (!r.clean()) {
            text << " e.g. (";
            for (size_t i = 0; i < r.witnesses[0].size(); ++i)
                text << (i ? "," : "") << r.witnesses[0][i].str();
            text << ")";
        }
        text << "\n";
    }
    o.results["families"] = std::move(fams);
    o.text = text.str();
    return o;
}

Outcome cmd_latsearch(int n, long long max_index) {
    Outcome o;
    long long budget = env_budget(10'000'000);
    auto res = min_index_search(n, {VectorFamily::ZeroOneTwo, VectorFamily::PlusMinusOne},
                                Int(max_index), budget);
    std::ostringstream text;
    o.results["n"] = n;
    o.results["max_index"] = max_index;
    o.results["membership_tests"] = res.membership_tests;
    ordered_json census = ordered_json::array();
    for (const auto& e : res.census) {
        ordered_json je;
        je["index"] = (long long)e.index;
        je["lattices"] = e.lattices;
        je["passing"] = e.passing;
        census.push_back(std::move(je));
    }
    o.results["census"] = std::move(census);
    if (res.smallest_passing_index) {
        o.results["smallest_passing_index"] = (long long)*res.smallest_passing_index;
        text << "smallest index with no nonzero {0,1,2} or {-1,0,1} vector: "
             << res.smallest_passing_index->str() << "\n";
    } else {
        o.results["smallest_passing_index"] = nullptr;
        text << "no passing index up to " << max_index << "\n";
        o.pass = false;
        o.exit_code = 3;
    }
    text << "census (index: lattices scanned / passing):\n";
    for (const auto& e : res.census)
        text << "  " << e.index.str() << ": " << e.lattices << " / " << e.passing << "\n";
    o.text = text.str();
    return o;
}

Outcome cmd_theorem1(const std::string& source, const std::string& cocycle_spec, bool sample,
                     long long sample_count, uint64_t seed) {
    Outcome o;
    SourceSpec spec = parse_source(source);
    SimplicialCellComplex X;
    std::vector<CochainF2> cocycles;
    std::string cspec = cocycle_spec;
    if (cspec.empty())
        cspec = (spec.kind == SourceSpec::CrystalTorus || spec.kind == SourceSpec::TriTorus)
                    ? "dx"
                    : "h1pow";

    if (cspec == "dx") {
        QuotientComplex Q = build_quotient_source(spec);
        cocycles = dx_cocycles_mod2(Q);
        X = std::move(Q.complex);
    } else {
        X = build_complex_source(spec);
        if (cspec == "h1pow") {
            auto basis = cohomology_basis_f2(X, 1);
            if (basis.empty())
                throw Error(ErrorKind::Domain, "complex has trivial H^1 over F2");
            cocycles.assign(size_t(X.top_dim()), basis[0]);
        } else if (cspec == "h1") {
            cocycles = cohomology_basis_f2(X, 1);
            if (cocycles.empty())
                throw Error(ErrorKind::Domain, "complex has trivial H^1 over F2");
        } else {
            // comma-separated cochain files
            std::stringstream ss(cspec);
            std::string path;
            while (std::getline(ss, path, ',')) {
                TaggedCochain tc = cochain_from_json(read_file(path));
                if (tc.field != Field::F2)
                    throw Error(ErrorKind::Domain, "theorem1 cocycles must be over F2");
                cocycles.push_back(std::move(tc.f2));
            }
        }
    }

    Theorem1Options opts;
    opts.exhaustive = !sample;
    opts.sample_count = sample_count;
    opts.seed = seed;
    opts.tuple_cap = env_budget(1ll << 24);
    PerturbationReport rep = theorem1_witness_check(X, cocycles, opts);

    o.results["n_factors"] = rep.n_factors;
    o.results["mode"] = rep.exhaustive ? "exhaustive" : "sampled";
    if (!rep.exhaustive)
        o.results["seed"] = seed;
    o.results["total_tuples"] = rep.total_tuples;
    o.results["min_witnesses"] = rep.min_witnesses;
    o.results["witness_union_size"] = rep.witness_union_size;
    o.results["top_cell_count"] = rep.top_cell_count;
    o.results["required_cells"] = (long long)(1ll << rep.n_factors);
    o.results["all_tuples_witnessed"] = rep.all_tuples_witnessed;
    o.results["meets_pow2_bound"] = rep.meets_pow2_bound;
    // witness-count histogram keeps the report small and deterministic
    std::map<long long, long long> hist;
    for (long long c : rep.witness_counts)
        ++hist[c];
    ordered_json jh = ordered_json::object();
    for (const auto& [count, tuples] : hist)
        jh[std::to_string(count)] = tuples;
    o.results["witness_count_histogram"] = std::move(jh);

    std::ostringstream text;
    text << "perturbation sweep (" << (rep.exhaustive ? "exhaustive" : "sampled") << "): "
         << rep.total_tuples << " tuples over " << rep.n_factors << " factors\n"
         << "min witnesses per tuple: " << rep.min_witnesses << "\n"
         << "cells of cup dimension: " << rep.top_cell_count << " (needs >= "
         << (1ll << rep.n_factors) << ")\n";
    bool pass = rep.all_tuples_witnessed && rep.meets_pow2_bound;
    text << (pass ? "PASS\n" : "FAIL\n");
    o.pass = pass;
    o.exit_code = pass ? 0 : 3;
    o.text = text.str();
    return o;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s;
    for (size_t i = 0; i < args.size(); ++i)
        s += (i ? " " : "") + args[i];
    return s;
}

} // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"torus triangulations, crystallizations, cup products, and determinant "
                 "tensor decompositions"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

    // gen
    auto* gen = app.add_subcommand("gen", "generate a named construction")->fallthrough();
    std::string gen_kind;
    int gen_n = 0;
    std::string gen_out;
    gen->add_option("kind", gen_kind, "staircase | crystal-torus | tri-torus | rp")
        ->required()
        ->check(CLI::IsMember({"staircase", "crystal-torus", "tri-torus", "rp"}));
    gen->add_option("n", gen_n, "dimension")->required();
    gen->add_option("--out", gen_out, "output file");

    // validate / fvector / cohomology
    auto* validate_cmd = app.add_subcommand("validate", "classify a complex file")->fallthrough();
    std::string validate_file;
    validate_cmd->add_option("file", validate_file)->required();

    auto* fvector_cmd = app.add_subcommand("fvector", "f-vector of a complex file")->fallthrough();
    std::string fvector_file;
    fvector_cmd->add_option("file", fvector_file)->required();

    auto* coh_cmd = app.add_subcommand("cohomology", "Betti numbers of a complex file")->fallthrough();
    std::string coh_file, coh_field = "f2";
    coh_cmd->add_option("file", coh_file)->required();
    coh_cmd->add_option("--field", coh_field)->check(CLI::IsMember({"f2", "q"}));

    // detdecomp
    auto* det_cmd = app.add_subcommand("detdecomp", "rank-one decomposition of det_n")->fallthrough();
    std::string det_source, det_eps, det_lattice, det_out;
    bool det_lex = false, det_quot = false, det_verify = false;
    int det_cap = 7;
    det_cmd->add_option("source", det_source, "generator spec or file")->required();
    det_cmd->add_flag("--lex", det_lex, "lexicographic decomposition of a periodic source");
    det_cmd->add_flag("--quotient", det_quot, "decomposition through a torus quotient");
    det_cmd->add_option("--eps", det_eps, "eps-subdivision bound report, eps as p/q");
    det_cmd->add_option("--lattice", det_lattice, "lattice file or A:n/B:n for --quotient");
    det_cmd->add_option("--out", det_out, "write the decomposition file");
    det_cmd->add_flag("--verify", det_verify, "verify against the permutation-sign tensor");
    det_cmd->add_option("--verify-cap", det_cap, "largest n for the n^n verification sweep");

    // latcheck / latsearch
    auto* latcheck_cmd = app.add_subcommand("latcheck", "forbidden-vector families of a lattice")->fallthrough();
    std::string lat_source;
    latcheck_cmd->add_option("source", lat_source, "lattice file, A:n, or B:n")->required();

    auto* latsearch_cmd = app.add_subcommand("latsearch", "smallest clean sublattice index")->fallthrough();
    int ls_n = 0;
    long long ls_max = 0;
    latsearch_cmd->add_option("n", ls_n)->required();
    latsearch_cmd->add_option("max_index", ls_max)->required();

    // theorem1
    auto* th_cmd = app.add_subcommand("theorem1", "exhaustive coboundary perturbation sweep")->fallthrough();
    std::string th_source, th_cocycles;
    bool th_exhaustive = false;
    long long th_sample = 0;
    uint64_t th_seed = 0;
    th_cmd->add_option("source", th_source, "complex file or generator spec")->required();
    th_cmd->add_option("--cocycles", th_cocycles, "dx | h1pow | h1 | cochain files (comma-sep)");
    th_cmd->add_flag("--exhaustive", th_exhaustive, "sweep every tuple (default)");
    th_cmd->add_option("--sample", th_sample, "sample this many tuples instead");
    th_cmd->add_option("--seed", th_seed, "seed for sampled mode");

    std::vector<const char*> argv;
    argv.push_back("torusrank");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    CliResult res;
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = e.get_exit_code();
        if (code == 0) { // --help and friends
            out << app.help();
            res.text = out.str();
            res.exit_code = 0;
            return res;
        }
        res.error = std::string(e.what());
        res.exit_code = 1;
        return res;
    }

    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string digest;
    try {
        if (*gen) {
            digest = hex64(fnv1a64(gen_kind + ":" + std::to_string(gen_n)));
            o = cmd_gen(gen_kind, gen_n, gen_out);
        } else if (*validate_cmd) {
            digest = hex64(fnv1a64(read_file(validate_file)));
            o = cmd_inspect(validate_file, "f2", false);
        } else if (*fvector_cmd) {
            digest = hex64(fnv1a64(read_file(fvector_file)));
            o = cmd_inspect(fvector_file, "f2", false);
        } else if (*coh_cmd) {
            digest = hex64(fnv1a64(read_file(coh_file)));
            o = cmd_inspect(coh_file, coh_field, true);
        } else if (*det_cmd) {
            int modes = int(det_lex) + int(det_quot) + int(!det_eps.empty());
            if (modes != 1) {
                res.error = "detdecomp needs exactly one of --lex, --quotient, --eps";
                res.exit_code = 1;
                return res;
            }
            digest = source_digest(parse_source(det_source));
            std::string mode = det_lex ? "lex" : det_quot ? "quotient" : "eps";
            o = cmd_detdecomp(det_source, mode, det_eps, det_lattice, det_out, det_verify,
                              det_cap);
        } else if (*latcheck_cmd) {
            digest = source_digest(parse_source(lat_source));
            o = cmd_latcheck(lat_source);
        } else if (*latsearch_cmd) {
            digest = hex64(fnv1a64("latsearch:" + std::to_string(ls_n) + ":" +
                                   std::to_string(ls_max)));
            o = cmd_latsearch(ls_n, ls_max);
        } else if (*th_cmd) {
            digest = source_digest(parse_source(th_source));
            o = cmd_theorem1(th_source, th_cocycles, th_sample > 0, th_sample, th_seed);
        }
    } catch (const Error& e) {
        res.error = e.what();
        switch (e.kind()) {
        case ErrorKind::Verify:
            res.exit_code = 3;
            break;
        case ErrorKind::Budget:
            res.exit_code = 4;
            break;
        default:
            res.exit_code = 2;
            break;
        }
        return res;
    }
    auto t1 = std::chrono::steady_clock::now();

    ordered_json report;
    report["command"] = join_args(args);
    report["inputs_digest"] = digest;
    report["results"] = std::move(o.results);
    report["pass"] = o.pass;
    report["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    res.report_json = report.dump(2) + "\n";
    res.text = o.text;
    res.exit_code = o.exit_code;
    if (format == "json")
        res.text = res.report_json;
    return res;
}

int main_entry(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    CliResult r = run_cli(args);
    if (!r.error.empty())
        std::cerr << "error: " << r.error << "\n";
    if (!r.text.empty())
        std::cout << r.text;
    return r.exit_code;
}

} // namespace torusrank::cli
