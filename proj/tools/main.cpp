#include "equinorm/cli.hpp"

int main(int argc, char** argv) { return equinorm::cli::run(argc, argv); }
