#include "satfake/cli.hpp"

int main(int argc, char** argv) { return satfake::cli::run(argc, argv); }
