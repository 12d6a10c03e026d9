#include "divcurl/cli.hpp"

int main(int argc, char** argv) { return divcurl::cli::run(argc, argv); }
