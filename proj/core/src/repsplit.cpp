#include "freecairn/repsplit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <unordered_map>

#include "freecairn/errors.hpp"

namespace freecairn {

namespace {

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", r);
  return buf;
}

double isometry_residual(const Matrix& before, const Matrix& after) {
  if (before.cols() == 0) return 0.0;
  return (after.adjoint() * after - before.adjoint() * before).cwiseAbs().maxCoeff();
}

}  // namespace

Subspace level_space(const HilbertCairn& c, int n) {
  if (n < -1) throw std::invalid_argument("level_space: n must be >= -1");
  std::vector<Subspace> parts;
  for (const Interval& J : c.index()) {
    if (J.rank() <= n) parts.push_back(c.subspace_of(J));
  }
  return join(parts, c.ambient_dim());
}

Subspace reduced_block(const HilbertCairn& c, const Interval& I) {
  if (I.empty() || !c.in_window(I)) {
    throw OutOfWindowError(to_literal(I) + " is not a subinterval of I" + std::to_string(c.window_rank()));
  }
  return ominus(c.subspace_of(I), level_space(c, I.rank() - 1));
}

Decomposition decompose(const GradedCairn& c, const Tolerances& tol, std::uint64_t seed) {
  Decomposition d;
  d.window_rank = c.window_rank();
  d.ambient_dim = c.ambient_dim();

  std::string worst_where;
  double worst_value = 0.0;
  auto note = [&](double r, const std::string& where) {
    if (r > worst_value) {
      worst_value = r;
      worst_where = where;
    }
  };

  Subspace previous(c.ambient_dim());
  for (int n = 0; n <= c.window_rank(); ++n) {
    Level level;
    level.n = n;
    for (const Interval& I : c.index()) {
      if (I.rank() == n) level.blocks.push_back({I, ominus(c.subspace_of(I), previous)});
    }
    std::vector<Subspace> parts;
    for (const auto& b : level.blocks) parts.push_back(b.space);
    level.tilde_E = join(parts, c.ambient_dim());

    for (std::size_t i = 0; i < level.blocks.size(); ++i) {
      for (std::size_t j = i + 1; j < level.blocks.size(); ++j) {
        const double r = orthogonality_residual(level.blocks[i].space, level.blocks[j].space);
        level.worst_orthogonality = std::max(level.worst_orthogonality, r);
        note(r, to_literal(level.blocks[i].interval) + " vs " + to_literal(level.blocks[j].interval));
      }
    }
    d.worst_within_level = std::max(d.worst_within_level, level.worst_orthogonality);

    const Subspace current = level_space(c, n);
    d.level_residual = std::max(d.level_residual, equality_residual(level.tilde_E, ominus(current, previous)));
    previous = current;
    d.levels.push_back(std::move(level));
  }

  for (std::size_t m = 0; m < d.levels.size(); ++m) {
    for (std::size_t n = m + 1; n < d.levels.size(); ++n) {
      for (const auto& x : d.levels[m].blocks) {
        for (const auto& y : d.levels[n].blocks) {
          const double r = orthogonality_residual(x.space, y.space);
          d.worst_across_levels = std::max(d.worst_across_levels, r);
          note(r, to_literal(x.interval) + " vs " + to_literal(y.interval));
        }
      }
    }
  }

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 8; ++trial) {
    Vector v = random_vector(c.ambient_dim(), rng);
    v.normalize();
    Vector sum = Vector::Zero(c.ambient_dim());
    for (const auto& level : d.levels) {
      for (const auto& b : level.blocks) sum += project(v, b.space);
    }
    d.completeness_residual = std::max(d.completeness_residual, (v - sum).norm());
  }

  if (worst_value > tol.relation) {
    throw DecompositionError("blocks fail to be orthogonal: " + worst_where + " residual " +
                                 format_residual(worst_value),
                             worst_where, worst_value);
  }
  if (d.completeness_residual > tol.decomposition) {
    throw DecompositionError("blocks do not exhaust the ambient space, residual " +
                                 format_residual(d.completeness_residual),
                             "completeness", d.completeness_residual);
  }
  if (d.level_residual > tol.decomposition) {
    throw DecompositionError("a level differs from E_n minus E_(n-1), residual " +
                                 format_residual(d.level_residual),
                             "levels", d.level_residual);
  }
  return d;
}

RegularCertificate certify_regular_multiple(const GradedCairn& c, const Decomposition& d, double tol) {
  RegularCertificate cert;
  cert.window_rank = d.window_rank;
  cert.scope =
      "windowed: shifts permute the level blocks inside I" + std::to_string(d.window_rank) +
      " and act freely and transitively on the translates of each I_n there; the statement for the "
      "whole free group is the infinite limit and is not checked";
  const auto& sys = c.system();

  for (const Level& level : d.levels) {
    LevelCertificate lc;
    lc.n = level.n;
    lc.translates = level.blocks.size();

    std::unordered_map<IntervalKey, std::size_t, IntervalKeyHash> at;
    for (std::size_t i = 0; i < level.blocks.size(); ++i) at.emplace(level.blocks[i].interval.key(), i);
    std::vector<std::vector<std::size_t>> next(level.blocks.size());

    for (Letter l : kLetters) {
      for (const auto& [from, to] : c.shift_interval_map(l)) {
        if (from.rank() != level.n) continue;
        const auto i = at.at(from.key());
        const auto j = at.at(to.key());
        next[i].push_back(j);
        ++lc.shift_pairs;
        const Subspace& source = level.blocks[i].space;
        const Subspace& target = level.blocks[j].space;
        const Matrix moved = c.apply_shift(l, source.frame());
        double r = isometry_residual(source.frame(), moved);
        if (source.dim() != target.dim()) {
          r = std::max(r, 1.0);
        } else if (!source.is_trivial()) {
          r = std::max(r, equality_residual(Subspace::from_orthonormal(moved), target));
        }
        lc.worst_permutation_residual = std::max(lc.worst_permutation_residual, r);
        if (r > tol) {
          cert.valid = false;
          cert.witnesses.push_back("level " + std::to_string(level.n) + ": " + std::string(1, letter_char(l)) +
                                   " carries the block of " + to_literal(from) + " (dim " +
                                   std::to_string(source.dim()) + ") to the block of " + to_literal(to) +
                                   " (dim " + std::to_string(target.dim()) + ") with residual " +
                                   format_residual(r));
        }
      }
    }

    const auto base = at.find(sys.base_interval(level.n).key());
    if (base == at.end()) throw ConsistencyError("base interval missing from its own level");
    std::vector<bool> seen(level.blocks.size(), false);
    std::deque<std::size_t> queue{base->second};
    seen[base->second] = true;
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      for (auto j : next[i]) {
        if (!seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
    lc.reachable = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
    if (lc.reachable != lc.translates) {
      cert.valid = false;
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
          cert.witnesses.push_back("level " + std::to_string(level.n) + ": " +
                                   to_literal(level.blocks[i].interval) + " is not reachable from I" +
                                   std::to_string(level.n));
          break;
        }
      }
    }

    lc.stabilizer = sys.stabilizer(level.n);
    if (lc.stabilizer.size() != 1 || !lc.stabilizer.front().is_identity()) {
      cert.valid = false;
      for (const Word& w : lc.stabilizer) {
        if (!w.is_identity()) {
          cert.witnesses.push_back("level " + std::to_string(level.n) + ": " + to_string(w) + " fixes I" +
                                   std::to_string(level.n));
          break;
        }
      }
    }
    cert.levels.push_back(std::move(lc));
  }
  return cert;
}

DisplacementResult displacement_bound(int radius, std::uint64_t seed, std::size_t identity_samples,
                                      const EigenSolverOptions& opts, int cap) {
  const auto op = cayley_adjacency(radius, cap);
  const auto k = kazhdan_eta();
  DisplacementResult out;
  out.radius = radius;
  out.eta = k.eta;
  out.threshold = 4.0 - k.kesten_norm;
  out.min_eig = 4.0 - top_eigenvalue(op, opts).value;
  out.pass = out.min_eig >= out.threshold - 1e-9;

  if (radius >= 1) {
    for (std::size_t s = 0; s < identity_samples; ++s) {
      const auto xi = random_interior_unit_vector(op, seed + s);
      const auto t = averaging_identity(op, xi);
      out.identity_error = std::max(out.identity_error, std::abs(t.displacement_sum - t.quadratic_form));
      ++out.identity_samples;
    }
  }
  return out;
}

}  // namespace freecairn
