#include "rbb/cli.hpp"

int main(int argc, char** argv) { return rbb::cli::main(argc, argv); }
