#include "excesslab/shrink.hpp"

#include <cmath>
#include <optional>
#include <vector>

#include "excesslab/errors.hpp"

namespace excesslab {

namespace {

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  const double mag = std::floor(std::log10(std::abs(v)));
  const double scale = std::pow(10.0, digits - 1 - mag);
  return std::round(v * scale) / scale;
}

std::optional<JointDistribution> try_make(std::vector<Atom> atoms) {
  double sum = 0.0;
  for (const Atom& a : atoms) sum += a.w;
  if (!(sum > 0.0)) return std::nullopt;
  for (Atom& a : atoms) a.w /= sum;
  try {
    return make_joint(std::move(atoms));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::vector<Atom> copy_atoms(const JointDistribution& d) {
  return {d.atoms().begin(), d.atoms().end()};
}

bool accept(std::vector<Atom> atoms, const ShrinkPredicate& keep,
            JointDistribution& current) {
  auto cand = try_make(std::move(atoms));
  if (!cand || same_distribution(*cand, current, 0.0)) return false;
  if (!keep(*cand)) return false;
  current = std::move(*cand);
  return true;
}

bool drop_atoms(JointDistribution& current, const ShrinkPredicate& keep) {
  bool changed = false;
  for (std::size_t i = 0; current.size() > 1 && i < current.size();) {
    std::vector<Atom> atoms = copy_atoms(current);
    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
    if (accept(std::move(atoms), keep, current)) {
      changed = true;
    } else {
      ++i;
    }
  }
  return changed;
}

bool simplify_values(JointDistribution& current, const ShrinkPredicate& keep) {
  bool changed = false;
  for (std::size_t i = 0; i < current.size(); ++i) {
    for (int field = 0; field < 2; ++field) {
      auto coord = [field](Atom& a) -> double& { return field == 0 ? a.x : a.y; };
      std::vector<Atom> atoms = copy_atoms(current);
      if (coord(atoms[i]) == 0.0) continue;
      coord(atoms[i]) = 0.0;
      if (accept(atoms, keep, current)) {
        changed = true;
        continue;
      }
      for (int digits = 1; digits <= 6; ++digits) {
        atoms = copy_atoms(current);
        const double r = round_significant(coord(atoms[i]), digits);
        if (r == coord(atoms[i])) break;
        coord(atoms[i]) = r;
        if (accept(std::move(atoms), keep, current)) {
          changed = true;
          break;
        }
      }
    }
  }
  return changed;
}

bool simplify_weights(JointDistribution& current, const ShrinkPredicate& keep) {
  bool changed = false;
  {
    std::vector<Atom> atoms = copy_atoms(current);
    for (Atom& a : atoms) a.w = 1.0;
    if (accept(std::move(atoms), keep, current)) return true;
  }
  for (std::size_t i = 0; i + 1 < current.size(); ++i) {
    for (int digits = 1; digits <= 4; ++digits) {
      std::vector<Atom> atoms = copy_atoms(current);
      const double r = round_significant(atoms[i].w, digits);
      if (r == atoms[i].w) break;
      const double diff = atoms[i].w - r;
      atoms[i].w = r;
      atoms.back().w += diff;
      if (!(atoms.back().w > 0.0)) continue;
      if (accept(std::move(atoms), keep, current)) {
        changed = true;
        break;
      }
    }
  }
  return changed;
}

}  // namespace

JointDistribution shrink(const JointDistribution& start,
                         const ShrinkPredicate& keep) {
  JointDistribution current = start;
  for (int round = 0; round < 32; ++round) {
    bool changed = drop_atoms(current, keep);
    changed = simplify_values(current, keep) || changed;
    changed = simplify_weights(current, keep) || changed;
    if (!changed) break;
  }
  return current;
}

}  // namespace excesslab
