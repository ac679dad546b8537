#include "srdesign/cli.hpp"

int main(int argc, char** argv) { return srd::cli::run(argc, argv); }
