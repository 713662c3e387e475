#include <cstdio>
int main() { std::puts("hypwave: no subcommand"); return 2; }
