#include "polyhex_cli.hpp"

int main(int argc, char** argv) { return polyhex::cli::run(argc, argv, std::cout, std::cerr); }
