#include "lanehmm/cli.hpp"

int main(int argc, char** argv) {
    return lanehmm::cli::run_main(argc, argv);
}
