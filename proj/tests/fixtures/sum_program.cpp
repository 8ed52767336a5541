// Reads n, then n integers, prints their sum.
#include <cstdio>

int main() {
  long long n = 0;
  if (std::scanf("%lld", &n) != 1) return 1;
  long long total = 0;
  for (long long i = 0; i < n; ++i) {
    long long x = 0;
    if (std::scanf("%lld", &x) != 1) return 1;
    total += x;
  }
  std::printf("%lld\n", total);
  std::fflush(stdout);
  return 0;
}
