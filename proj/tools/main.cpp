#include "blowlab/cli.hpp"

int main(int argc, char** argv) { return blowlab::run_cli(argc, argv); }
