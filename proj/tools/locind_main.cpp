#include "locind/cli.hpp"

int main(int argc, char** argv) { return locind::run_cli(argc, argv); }
