#include "sscm/cli.hpp"

int main(int argc, char** argv) { return sscm::run_cli(argc, argv); }
