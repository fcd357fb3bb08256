#include <iostream>

#include "bnndep_cli/app.hpp"

int main(int argc, char** argv) { return bnndep::cli::run(argc, argv, std::cout, std::cerr); }
