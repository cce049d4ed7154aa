#pragma once

// Worked example data shared by the unit tests and the acceptance binary:
// a 7x6 system with three inputs, witnesses for its canonical and quasi
// forms, and the matrices those witnesses are documented to produce.

#include <daeforms/canonical_forms.hpp>
#include <daeforms/matrix.hpp>
#include <daeforms/p_feedback.hpp>
#include <daeforms/pd_feedback.hpp>
#include <daeforms/rational.hpp>
#include <daeforms/system.hpp>

#include <cstdlib>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>

namespace fixtures {

using daeforms::Mat;

/// Matrix from rational strings.
inline Mat rat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Mat m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const char* s : row) {
      auto v = daeforms::parse_rational(s);
      if (!v) throw std::invalid_argument(std::string("bad fixture entry ") + s);
      m(i, j++) = *v;
    }
    ++i;
  }
  return m;
}

inline daeforms::SystemTriple example_system() {
  Mat e{{-2, -3, 0, -1, -4, -3}, {1, 4, 3, -1, 4, 4},  {0, -4, -7, 1, -3, -6}, {0, 2, 1, -2, 2, 1},
        {2, 5, 1, -1, 6, 4},     {2, 4, 2, 1, 5, 5},   {-2, 2, 9, -2, 0, 5}};
  Mat a{{-2, -2, 4, 3, 1, -1},  {0, -3, -3, -2, -5, -3}, {-1, 4, 3, 5, 7, 3}, {-1, -2, 3, 1, 0, 0},
        {1, 1, 1, -2, 0, 3},    {4, 0, -5, -5, -2, -2},  {2, -6, 4, -5, -4, -4}};
  Mat b{{1, -1, -1}, {0, 0, 2}, {-1, 2, -3}, {1, -1, 1}, {0, 0, 2}, {1, -3, 2}, {5, -9, 3}};
  return daeforms::SystemTriple(e, a, b);
}

// Witness to the proportional-feedback canonical form.
inline daeforms::PTransform pff_witness() {
  return {Mat{{-15, 2, 4, 5, -6, -6, 4},
              {-16, -1, 2, 9, -8, -5, 3},
              {-3, -1, 0, 3, -2, 0, 0},
              {8, 2, 0, -5, 4, 2, -1},
              {-1, 0, 0, 1, -1, 0, 0},
              {-6, 0, 1, 3, -3, -2, 1},
              {-4, 0, 1, 2, -2, -1, 1}},
          Mat{{-17, 10, -13, -3, -8, 6},
              {13, -6, 9, 2, 6, -4},
              {-7, 4, -5, -1, -3, 2},
              {6, -3, 4, 1, 3, -2},
              {-5, 2, -3, 0, -2, 1},
              {3, -2, 2, 0, 1, -1}},
          Mat{{2, 0, -1}, {1, 0, -1}, {0, -1, -1}},
          Mat{{3, 3, -2, -2, 0, 2}, {-14, 10, -12, -3, -7, 6}, {7, -4, 6, 3, 4, -3}}};
}

inline daeforms::PffData pff_data() {
  daeforms::PffData d;
  d.alpha = {1};
  d.beta = {2};
  d.gamma = {1};
  d.delta = {};
  d.kappa = {2, 1};
  d.A_cbar = Mat{{1}};
  return d;
}

// Witness documented for the proportional-derivative canonical form.
inline daeforms::PDTransform printed_pdff_witness() {
  const daeforms::PTransform p = pff_witness();
  return {Mat{{-15, 2, 4, 5, -6, -6, 4},
              {-3, -1, 0, 3, -2, 0, 0},
              {8, 2, 0, -5, 4, 2, -1},
              {-1, 0, 0, 1, -1, 0, 0},
              {-16, -1, 2, 9, -8, -5, 3},
              {-6, 0, 1, 3, -3, -2, 1},
              {-4, 0, 1, 2, -2, -1, 1}},
          p.T, p.V, p.F_P, Mat{{0, 0, -2, 0, 0, 0}, {0, 0, -1, 0, 0, 0}, {0, 0, 0, 0, 0, 1}}};
}

inline daeforms::PdffData pdff_data() {
  daeforms::PdffData d;
  d.alpha = {1, 2};
  d.A_cbar = Mat{{1}};
  d.beta = {1, 1};
  d.gamma = {};
  d.r = 3;
  return d;
}

// Documented bases of the Wong sequences.
inline Mat v1_basis() { return Mat{{5, 2, 0, 2}, {-2, 0, -1, -2}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}; }
inline Mat w1_basis() { return Mat{{3, -1, -2, 0}, {-1, 1, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}; }
inline Mat w2_basis() {
  return Mat{{-1, 2, 0, -2, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
}

// Documented witness for the quasi proportional-feedback form and its result.
inline daeforms::PTransform printed_qpff_witness() {
  const Mat s_inv = rat({{"1", "0", "-1", "-1", "-1", "0", "-1"},
                         {"0", "1", "-1", "-1", "1", "-1", "0"},
                         {"0", "-1", "-1", "0", "1", "-1", "1"},
                         {"1", "1", "-4", "-2", "0", "0", "0"},
                         {"0", "1", "-3", "-1", "1", "1", "0"},
                         {"-1", "0", "1", "7/2", "-7/2", "-1", "0"},
                         {"1", "1", "0", "3", "-9", "-1", "-1"}});
  return {daeforms::inverse(s_inv),
          Mat{{-8, -5, 2, 3, 1, 0},
              {4, 1, -2, -1, 0, 0},
              {-2, -1, 0, 1, 0, 0},
              {1, 0, 0, 0, -1, -1},
              {0, 1, 0, 1, 1, -1},
              {0, 0, 1, -1, 0, -1}},
          Mat{{2, -1, 0}, {1, 1, 0}, {0, -1, 1}},
          Mat{{9, 4, -1, -5, 0, 0}, {0, 0, 0, 0, 0, 0}, {6, 4, -3, 1, 0, 0}}};
}

inline daeforms::SystemTriple printed_qpff_result() {
  return daeforms::SystemTriple(rat({{"3", "3", "-1", "-5", "-29/2", "33"},
                                     {"1", "0", "-2", "1", "5/2", "0"},
                                     {"0", "0", "0", "-1", "-3/2", "1"},
                                     {"0", "0", "0", "0", "-5", "15"},
                                     {"0", "0", "0", "0", "-3", "9"},
                                     {"0", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "0", "0"}}),
                                rat({{"6", "5", "1", "-5", "18", "-679/6"},
                                     {"4", "3", "-3", "-1", "6", "-47/2"},
                                     {"0", "0", "0", "-1", "-1", "5/3"},
                                     {"0", "0", "0", "0", "15", "-427/6"},
                                     {"0", "0", "0", "0", "7", "-239/6"},
                                     {"0", "0", "0", "0", "2", "-23/6"},
                                     {"0", "0", "0", "0", "1", "-5/6"}}),
                                Mat{{1, 13, -9}, {0, 0, 0}, {0, 0, 0}, {0, 8, -5}, {0, 6, -3}, {0, 0, 0}, {0, 0, 0}});
}

// Documented witness for the quasi proportional-derivative form and its result.
inline daeforms::PDTransform printed_qpdff_witness() {
  const Mat s_inv = rat({{"0", "1", "-1", "-1", "1", "0", "0"},
                         {"1", "-1", "0", "1", "0", "1", "0"},
                         {"0", "0", "1", "0", "0", "0", "1"},
                         {"1", "1", "1", "1", "1", "1", "0"},
                         {"1", "0", "0", "0", "0", "1", "0"},
                         {"0", "1", "1", "1", "-1", "-5/2", "-2"},
                         {"1", "3", "1", "1", "1", "-4", "-4"}});
  return {daeforms::inverse(s_inv),
          Mat{{-8, -5, 2, 7, -1, 1},
              {4, 1, -2, -5, -1, 1},
              {-2, -1, 0, 1, 1, -1},
              {1, 0, 0, 0, 0, -1},
              {0, 1, 0, 1, 0, 0},
              {0, 0, 1, 1, 1, 0}},
          Mat::identity(3),
          rat({{"-7", "-9", "0", "5", "-37/2", "37/2"},
               {"-42/5", "-34/5", "4/5", "28/5", "-9", "9"},
               {"22/5", "14/5", "-9/5", "-13/5", "-1", "-2"}}),
          rat({{"-7", "-6", "4", "16", "-10", "9"},
               {"-18/5", "-3", "11/5", "36/5", "-13/5", "2"},
               {"-2/5", "0", "4/5", "4/5", "-7/5", "-1"}})};
}

inline daeforms::SystemTriple printed_qpdff_result() {
  return daeforms::SystemTriple(rat({{"1/5", "0", "-2/5", "8/5", "-24/5", "5"},
                                     {"0", "0", "0", "2", "-4", "4"},
                                     {"0", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "0", "0"}}),
                                rat({{"4/5", "3/5", "-3/5", "4/5", "0", "-1"},
                                     {"0", "0", "0", "2", "-3", "1"},
                                     {"0", "0", "0", "0", "13/2", "1/2"},
                                     {"0", "0", "0", "0", "-8", "0"},
                                     {"0", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "0", "0"}}),
                                Mat{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {1, -1, -1}, {0, 0, 2}, {-1, 2, -3}});
}

/// Seed for randomized tests: DAEFORMS_SEED if set, else a fixed value.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("DAEFORMS_SEED")) return std::stoull(s);
  return 20240611;
}

/// Matrix with integer entries drawn uniformly from [lo, hi].
inline Mat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo = -2, long hi = 2) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

inline Mat random_invertible(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    Mat m = random_matrix(rng, n, n);
    if (daeforms::is_invertible(m)) return m;
  }
}

/// Random system with l, n in [1, 5], m in [0, 3] and entries in {-2..2}.
inline daeforms::SystemTriple random_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> ln(1, 5), mm(0, 3);
  const std::size_t l = ln(rng), n = ln(rng), m = mm(rng);
  return daeforms::SystemTriple(random_matrix(rng, l, n), random_matrix(rng, l, n), random_matrix(rng, l, m));
}

}  // namespace fixtures
