#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <iostream>
#include <string>
#include <vector>

// Path to the powsum2 binary under test, injected by ctest as
// --cli-path=<path> and consumed here before doctest sees the arguments.
std::string g_cli_path;

int main(int argc, char** argv) {
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--cli-path=", 0) == 0) {
      g_cli_path = arg.substr(11);
      continue;
    }
    rest.push_back(argv[i]);
  }
  if (g_cli_path.empty()) {
    std::cerr << "usage: powsum2_cli_tests --cli-path=<powsum2 binary> [doctest args]\n";
    return 1;
  }
  doctest::Context ctx(static_cast<int>(rest.size()), rest.data());
  return ctx.run();
}
