#include <iostream>
int main() { std::cout << "spunfib (under construction)\n"; return 0; }
