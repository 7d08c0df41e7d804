// Entry point for the pswitch command line tool.
#include "pswitch/cli.hpp"

int main(int argc, char** argv) { return pswitch::cli_main(argc, argv); }
