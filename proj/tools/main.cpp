#include "stueckelberg/cli.hpp"

int main(int argc, char** argv) { return stueckelberg::run_cli(argc, argv); }
