#include "newton/cli.hpp"

int main(int argc, char** argv) { return newton::run_cli(argc, argv); }
