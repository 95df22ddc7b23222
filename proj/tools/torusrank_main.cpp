#include "torusrank/cli.hpp"

int main(int argc, char** argv) { return torusrank::cli::main_entry(argc, argv); }
