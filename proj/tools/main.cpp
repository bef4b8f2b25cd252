#include "fluxring/cli.hpp"

int main(int argc, char** argv) { return fluxring::cli::run_main(argc, argv); }
