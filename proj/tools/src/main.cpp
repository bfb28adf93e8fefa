#include "cli.hpp"

int main(int argc, char** argv) { return mgedge::cli_main(argc, argv); }
