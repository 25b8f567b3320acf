#include "shockcop/cli.hpp"

int main(int argc, char** argv) { return shockcop::run_cli(argc, argv); }
