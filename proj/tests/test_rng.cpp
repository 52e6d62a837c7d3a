// Copyright 2026 The polylab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "rng.hpp"

using namespace polylab;

TEST_CASE("same key replays the same sequence") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds and streams decorrelate") {
  RngStream a(42, 7), b(43, 7), c(42, 8);
  int eq_ab = 0, eq_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto xa = a.next_u64();
    if (xa == b.next_u64()) ++eq_ab;
    if (xa == c.next_u64()) ++eq_ac;
  }
  CHECK(eq_ab == 0);
  CHECK(eq_ac == 0);
}

TEST_CASE("derive is deterministic and independent of draw position") {
  RngStream a(1, 2);
  RngStream d1 = a.derive(99);
  a.uniform();
  a.uniform();
  RngStream d2 = a.derive(99);
  for (int i = 0; i < 100; ++i) CHECK(d1.next_u64() == d2.next_u64());
}

TEST_CASE("derived substreams do not collide") {
  std::set<std::uint64_t> firsts;
  RngStream a(5, 5);
  for (std::uint64_t tag = 0; tag < 2000; ++tag)
    firsts.insert(a.derive(tag).next_u64());
  CHECK(firsts.size() == 2000);
}

TEST_CASE("uniform is in [0,1) with the right first two moments") {
  RngStream r(11, 0);
  const long n = 200000;
  double s = 0, s2 = 0;
  for (long i = 0; i < n; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    s += u;
    s2 += u * u;
  }
  // mean 1/2 and second moment 1/3, each within 5 sigma
  CHECK(std::abs(s / n - 0.5) < 5.0 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(s2 / n - 1.0 / 3) < 5.0 * std::sqrt(4.0 / 45 / n));
}

TEST_CASE("normal has mean 0, variance 1, kurtosis 3") {
  RngStream r(13, 0);
  const long n = 200000;
  double s = 0, s2 = 0, s4 = 0;
  for (long i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  CHECK(std::abs(s / n) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(s4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
}

TEST_CASE("exponential has unit mean and variance") {
  RngStream r(17, 0);
  const long n = 200000;
  double s = 0, s2 = 0;
  for (long i = 0; i < n; ++i) {
    const double e = r.exponential();
    CHECK(e >= 0.0);
    s += e;
    s2 += e * e;
  }
  const double mean = s / n;
  CHECK(std::abs(mean - 1.0) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(s2 / n - mean * mean - 1.0) <
        5.0 * std::sqrt(8.0 / n));
}

TEST_CASE("stream copy carries the counter, so copies replay from the copy "
          "point") {
  RngStream a(3, 3);
  a.next_u64();
  RngStream b = a;
  CHECK(a.next_u64() == b.next_u64());
}
