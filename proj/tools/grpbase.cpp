#include "grpbase/cli.hpp"

int main(int argc, char** argv) { return grpbase::run_cli(argc, argv); }
