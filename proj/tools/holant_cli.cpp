#include "holant/cli.hpp"

int main(int argc, char** argv) { return holant::cli::run(argc, argv, std::cout, std::cerr); }
