#include "graphtd/cli.hpp"

int main(int argc, char** argv) { return graphtd::run_cli(argc, argv); }
