#include <cstdio>

int main() {
  std::puts("unclon: cli not wired yet");
  return 0;
}
