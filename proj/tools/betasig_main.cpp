#include "betasig/cli.hpp"

int main(int argc, char** argv) {
    return betasig::io::run_cli(argc, argv);
}
