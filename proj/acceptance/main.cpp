#include <iostream>

#include "acceptance.hpp"

int main() { return ringspec::acceptance::run_suite(std::cout) ? 0 : 1; }
