#include "poromix/config.hpp"
#include "poromix/studies.hpp"

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
  try {
    poromix::apply_thread_env();
    const poromix::RunConfig cfg = poromix::parse_config(argc, argv);
    return poromix::run_study(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
