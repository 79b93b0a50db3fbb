#include "twpart/cli.hpp"

int main(int argc, char** argv) { return twpart::run_cli(argc, argv); }
