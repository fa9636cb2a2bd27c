#pragma once

// doctest main that turns on the reduction audit for the whole run.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "polypow/telescope.hpp"

int main(int argc, char** argv) {
  polypow::reduction_audit::set_enabled(true);
  doctest::Context ctx(argc, argv);
  int rc = ctx.run();
  if (polypow::reduction_audit::failures() != 0) rc = 1;
  return rc;
}
