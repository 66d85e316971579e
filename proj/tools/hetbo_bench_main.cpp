#include "hetbo/cli.hpp"

int main(int argc, char** argv) { return hetbo::run(argc, argv); }
