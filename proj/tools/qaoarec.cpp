#include <iostream>

#include "qaoarec/cli.hpp"

int main(int argc, char** argv) { return qaoarec::cli::dispatch(argc, argv, std::cout, std::cerr); }
