#include "citesim/cli.hpp"

int main(int argc, char** argv) { return citesim::run_cli(argc, argv); }
