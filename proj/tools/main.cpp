#include <cstdio>

int main() {
    std::puts("bmrates placeholder");
    return 0;
}
