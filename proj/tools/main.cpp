#include "varinf/cli.hpp"

int main(int argc, char** argv) { return varinf::dispatch(argc, argv); }
