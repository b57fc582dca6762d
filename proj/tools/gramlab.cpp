#include "gramlab/cli.hpp"

int main(int argc, char** argv) {
    return gramlab::cli_main(argc, argv);
}
