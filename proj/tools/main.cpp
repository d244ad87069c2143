#include "deltaprime/cli.hpp"

int main(int argc, char** argv) { return dp::cli::run(argc, argv); }
