#include <iostream>

#include "paramlift/Cli.h"

int main(int argc, char** argv) {
    return paramlift::cli::main(argc, argv, std::cout, std::cerr);
}
