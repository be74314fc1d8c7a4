#include "magnon/cli.hpp"

int main(int argc, char **argv) { return magnon::cli::run(argc, argv); }
