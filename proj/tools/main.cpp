#include "complab/cli.hpp"

int main(int argc, char** argv) { return complab::run_cli(argc, argv); }
