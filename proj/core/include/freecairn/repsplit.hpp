#pragma once

// Level decomposition of a windowed cairn:
//
//   E_n   = join of H_J over window subintervals J of rank <= n  (E_{-1} = {0})
//   H~_I  = H_I ⊖ E_{n-1}            for I of rank n
//   E~_n  = join of the H~_I of rank n
//
// and a certificate that the shifts permute the level-n blocks while acting
// freely and transitively on the translates of I_n inside the window. This
// is the finite content of "the representation restricted to the free group
// is a multiple of the left-regular one"; the infinite statement itself is
// not claimed.

#include <cstdint>
#include <string>
#include <vector>

#include "freecairn/cairn.hpp"
#include "freecairn/errors.hpp"
#include "freecairn/spectral.hpp"

namespace freecairn {

Subspace level_space(const HilbertCairn& c, int n);
Subspace reduced_block(const HilbertCairn& c, const Interval& I);

struct LevelBlock {
  Interval interval;
  Subspace space;
};

struct Level {
  int n = 0;
  Subspace tilde_E;
  std::vector<LevelBlock> blocks;
  double worst_orthogonality = 0.0;  // between distinct blocks of this level
};

struct Decomposition {
  int window_rank = 0;
  Eigen::Index ambient_dim = 0;
  std::vector<Level> levels;
  double worst_within_level = 0.0;
  double worst_across_levels = 0.0;
  // max over random unit v of |v - Σ_blocks P_block v|
  double completeness_residual = 0.0;
  // max_n of the equality residual between E~_n and E_n ⊖ E_{n-1}
  double level_residual = 0.0;
};

// Throws DecompositionError (carrying the worst offender) when blocks fail
// to be orthogonal within `tol.relation` or fail to exhaust the ambient space
// within `tol.decomposition`.
Decomposition decompose(const GradedCairn& c, const Tolerances& tol = {},
                        std::uint64_t seed = 0);

struct LevelCertificate {
  int n = 0;
  std::size_t translates = 0;  // rank-n intervals in the window
  std::size_t reachable = 0;   // from I_n under the partial shifts
  std::vector<Word> stabilizer;
  std::size_t shift_pairs = 0;
  double worst_permutation_residual = 0.0;
};

struct RegularCertificate {
  bool valid = true;
  int window_rank = 0;
  std::vector<LevelCertificate> levels;
  std::vector<std::string> witnesses;
  std::string scope;
};

RegularCertificate certify_regular_multiple(const GradedCairn& c, const Decomposition& d,
                                            double tol = Tolerances{}.decomposition);

struct DisplacementResult {
  int radius = 0;
  double min_eig = 0.0;    // λ_min(4 Id - A_R)
  double threshold = 0.0;  // 4 - 2√3
  double eta = 0.0;
  bool pass = false;
  // max over random interior unit vectors of the averaging-identity defect.
  double identity_error = 0.0;
  std::size_t identity_samples = 0;
};

DisplacementResult displacement_bound(int radius, std::uint64_t seed = 0,
                                      std::size_t identity_samples = 16,
                                      const EigenSolverOptions& opts = {},
                                      int cap = kDefaultSpectralRadiusCap);

}  // namespace freecairn
