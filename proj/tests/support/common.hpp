#pragma once

#include "bayesbias/bayesbias.hpp"
#include "bayesbias/io.hpp"

#include <string>

namespace bayesbias::testing {

inline Rational R(long long p, long long q = 1) { return Rational(Rational::Integer(p), Rational::Integer(q)); }

inline std::string fixture(const std::string& name) { return std::string(BAYESBIAS_FIXTURE_DIR) + "/" + name; }

template <typename T>
T load_fixture(const std::string& name) {
  return io::load<T>(fixture(name));
}

}  // namespace bayesbias::testing
