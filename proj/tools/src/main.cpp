#include <iostream>

#include "mfrac_app/cli.hpp"

int main(int argc, char** argv) { return mfrac::app::run_cli(argc, argv, std::cout, std::cerr); }
