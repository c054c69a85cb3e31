#include "trop/matroid.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "trop/error.hpp"
#include "trop/lattice.hpp"
#include "trop/linalg.hpp"

namespace trop {

namespace {

constexpr std::size_t kMaxGround = 20;

Subset full_mask(std::size_t g) { return (Subset{1} << g) - 1; }

bool contains_mask(const std::vector<Subset>& sorted, Subset s) {
  return std::binary_search(sorted.begin(), sorted.end(), s);
}

Polyhedron cone_from_rays(std::size_t n, const std::vector<IntVec>& rays) {
  return Polyhedron::from_generators(n, {RatVec(n, Rat(0))}, rays, {});
}

// Coordinates of e_I = Σ_{i∈I} e_i in Z^g/Z·1 under the chosen basis.
IntVec flat_vector(Subset flat, std::size_t g) {
  IntVec v(g - 1, Int(0));
  for (std::size_t i = 0; i + 1 < g; ++i)
    if (flat & (Subset{1} << i)) v[i] = 1;
  if (flat & (Subset{1} << (g - 1)))
    for (Int& x : v) x -= 1;
  return v;
}

}  // namespace

Matroid Matroid::from_flats(std::size_t ground_size, std::vector<Subset> flats) {
  if (ground_size == 0 || ground_size > kMaxGround)
    throw Error(Err::InvalidMatroid, "ground set size out of range");
  Subset full = full_mask(ground_size);
  std::sort(flats.begin(), flats.end());
  flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
  for (Subset f : flats)
    if (f & ~full) throw Error(Err::InvalidMatroid, "flat outside the ground set");
  if (!contains_mask(flats, full))
    throw Error(Err::InvalidMatroid, "ground set is not a flat");
  if (!contains_mask(flats, 0))
    throw Error(Err::NotLoopless, "empty set is not a flat");
  for (std::size_t i = 0; i < flats.size(); ++i)
    for (std::size_t j = i + 1; j < flats.size(); ++j)
      if (!contains_mask(flats, flats[i] & flats[j]))
        throw Error(Err::InvalidMatroid, "flats are not closed under intersection");

  // For every flat, the minimal flats properly above it partition the rest.
  for (Subset f : flats) {
    std::vector<Subset> above;
    for (Subset g : flats)
      if (g != f && (g & f) == f) above.push_back(g);
    Subset covered = 0;
    for (Subset g : above) {
      bool minimal = true;
      for (Subset h : above)
        if (h != g && (h & g) == h) {
          minimal = false;
          break;
        }
      if (!minimal) continue;
      if (covered & (g & ~f))
        throw Error(Err::InvalidMatroid, "minimal flats above a flat overlap");
      covered |= g & ~f;
    }
    if (covered != (full & ~f))
      throw Error(Err::InvalidMatroid, "minimal flats above a flat do not cover");
  }

  Matroid m;
  m.m_ground = ground_size;
  m.m_flats = std::move(flats);
  // Height in the flat lattice; the axioms make the lattice graded.
  std::vector<std::pair<int, Subset>> by_size;
  for (Subset f : m.m_flats) by_size.emplace_back(std::popcount(f), f);
  std::sort(by_size.begin(), by_size.end());
  std::vector<std::size_t> rank_of_flat(m.m_flats.size(), 0);
  for (const auto& [sz, f] : by_size) {
    std::size_t idx =
        std::lower_bound(m.m_flats.begin(), m.m_flats.end(), f) - m.m_flats.begin();
    std::size_t r = 0;
    for (std::size_t j = 0; j < m.m_flats.size(); ++j) {
      Subset g = m.m_flats[j];
      if (g != f && (g & f) == g) r = std::max(r, rank_of_flat[j] + 1);
    }
    rank_of_flat[idx] = r;
  }
  m.m_flat_rank = std::move(rank_of_flat);
  return m;
}

Matroid Matroid::from_bases(std::size_t ground_size, const std::vector<Subset>& bases) {
  if (ground_size == 0 || ground_size > kMaxGround)
    throw Error(Err::InvalidMatroid, "ground set size out of range");
  if (bases.empty()) throw Error(Err::InvalidMatroid, "no bases given");
  Subset full = full_mask(ground_size);
  int r = std::popcount(bases.front());
  for (Subset b : bases) {
    if (b & ~full) throw Error(Err::InvalidMatroid, "basis outside the ground set");
    if (std::popcount(b) != r) throw Error(Err::InvalidMatroid, "bases of unequal size");
  }
  auto rank_fn = [&](Subset s) {
    int best = 0;
    for (Subset b : bases) best = std::max(best, std::popcount(b & s));
    return best;
  };
  std::set<Subset> flat_set;
  for (Subset s = 0; s <= full; ++s) {
    int rs = rank_fn(s);
    Subset cl = s;
    for (std::size_t x = 0; x < ground_size; ++x)
      if (rank_fn(s | (Subset{1} << x)) == rs) cl |= Subset{1} << x;
    flat_set.insert(cl);
  }
  return from_flats(ground_size, std::vector<Subset>(flat_set.begin(), flat_set.end()));
}

std::size_t Matroid::rank() const { return flat_rank(full_mask(m_ground)); }

Subset Matroid::closure(Subset s) const {
  Subset cl = full_mask(m_ground);
  for (Subset f : m_flats)
    if ((f & s) == s && std::popcount(f) < std::popcount(cl)) cl = f;
  return cl;
}

std::size_t Matroid::rank_of(Subset s) const { return flat_rank(closure(s)); }

bool Matroid::is_flat(Subset s) const { return contains_mask(m_flats, s); }

std::size_t Matroid::flat_rank(Subset flat) const {
  auto it = std::lower_bound(m_flats.begin(), m_flats.end(), flat);
  if (it == m_flats.end() || *it != flat)
    throw Error(Err::InvalidMatroid, "rank of a non-flat requested");
  return m_flat_rank[static_cast<std::size_t>(it - m_flats.begin())];
}

std::vector<Subset> Matroid::proper_flats() const {
  std::vector<Subset> out;
  Subset full = full_mask(m_ground);
  for (Subset f : m_flats)
    if (f != 0 && f != full) out.push_back(f);
  return out;
}

Matroid Matroid::contraction(Subset flat) const {
  if (!is_flat(flat)) throw Error(Err::InvalidMatroid, "contraction by a non-flat");
  std::vector<std::size_t> relabel;  // positions of surviving elements
  for (std::size_t i = 0; i < m_ground; ++i)
    if (!(flat & (Subset{1} << i))) relabel.push_back(i);
  std::vector<Subset> new_flats;
  for (Subset g : m_flats) {
    if ((g & flat) != flat) continue;
    Subset image = 0;
    for (std::size_t k = 0; k < relabel.size(); ++k)
      if (g & (Subset{1} << relabel[k])) image |= Subset{1} << k;
    new_flats.push_back(image);
  }
  return from_flats(relabel.size(), std::move(new_flats));
}

Matroid uniform_matroid(std::size_t rank, std::size_t ground_size) {
  if (rank == 0 || rank > ground_size)
    throw Error(Err::InvalidMatroid, "uniform matroid rank out of range");
  Subset full = full_mask(ground_size);
  std::vector<Subset> flats{full};
  for (Subset s = 0; s < full; ++s)
    if (std::popcount(s) < static_cast<int>(rank)) flats.push_back(s);
  return Matroid::from_flats(ground_size, std::move(flats));
}

PolyComplex bergman_fan(const Matroid& m) {
  std::size_t g = m.ground_size();
  if (g == 0) throw Error(Err::InvalidMatroid, "empty matroid");
  std::size_t n = g - 1;
  std::size_t top = m.rank() - 1;

  std::vector<Subset> proper = m.proper_flats();
  std::vector<std::vector<IntVec>> flags;
  std::vector<IntVec> current;
  // Depth-first extension of flags by rank; complete flags have length top.
  auto extend = [&](auto&& self, Subset below, std::size_t depth) -> void {
    if (depth == top) {
      flags.push_back(current);
      return;
    }
    for (Subset f : proper) {
      if (m.flat_rank(f) != depth + 1) continue;
      if (depth > 0 && (f & below) != below) continue;
      if (depth > 0 && f == below) continue;
      current.push_back(flat_vector(f, g));
      self(self, f, depth + 1);
      current.pop_back();
    }
  };
  extend(extend, 0, 0);

  std::vector<Polyhedron> cones;
  std::vector<std::optional<Int>> weights;
  for (const auto& flag : flags) {
    cones.push_back(cone_from_rays(n, flag));
    weights.emplace_back(Int(1));
  }
  return PolyComplex::build(n, cones, {}, weights);
}

BalanceReport check_balanced(const PolyComplex& sigma) {
  if (!sigma.is_pure()) throw Error(Err::NotPure, "balancing needs a pure complex");
  for (std::size_t i : sigma.maximal_faces())
    if (!sigma.weight(i).has_value())
      throw Error(Err::MissingWeights, "top face without a weight");

  BalanceReport report;
  int top = sigma.dim();
  for (std::size_t t = 0; t < sigma.face_count(); ++t) {
    if (sigma.face_dim(t) != top - 1) continue;
    const Polyhedron& tau = sigma.face(t);
    RatVec w = tau.relint_point();
    Mat proj = lattice_quotient_projection(tau.tangent_space().basis());
    IntVec total(proj.rows(), Int(0));
    for (std::size_t s : sigma.maximal_faces()) {
      if (s == t || !sigma.is_subface(t, s)) continue;
      RatVec d = sigma.face(s).relint_point();
      for (std::size_t j = 0; j < d.size(); ++j) d[j] -= w[j];
      IntVec u = primitive_of_rational(proj.apply(d));
      const Int weight = *sigma.weight(s);
      for (std::size_t j = 0; j < total.size(); ++j) total[j] += weight * u[j];
    }
    if (!is_zero_vec(total)) {
      report.balanced = false;
      report.violations.push_back(t);
    }
  }
  return report;
}

bool check_smooth_certificate(const PolyComplex& sigma, const SmoothnessCertificate& cert) {
  EnrichedFan quotient;
  try {
    quotient = star_quotient(sigma, cert.face_index);
  } catch (const Error& e) {
    if (e.code() == Err::ContainsLine) return false;
    throw;
  }
  PolyComplex berg = bergman_fan(cert.matroid);
  std::size_t d = quotient.downstairs_rank();
  if (berg.rank() != d) return false;
  if (cert.basis.rows() != d || cert.basis.cols() != d)
    throw Error(Err::DimensionMismatch, "certificate basis shape");
  if (!is_unimodular(cert.basis)) throw Error(Err::BadBasis, "certificate basis not unimodular");

  std::vector<Polyhedron> transformed, bergman_tops;
  for (std::size_t i : quotient.fan.maximal_faces()) {
    std::vector<IntVec> rays;
    for (const IntVec& r : quotient.fan.face(i).rays())
      rays.push_back(primitive_of_rational(cert.basis.apply(to_rat_vec(r))));
    transformed.push_back(cone_from_rays(d, rays));
  }
  for (std::size_t i : berg.maximal_faces()) bergman_tops.push_back(berg.face(i));
  return support_equal(transformed, bergman_tops);
}

std::optional<SmoothnessCertificate> search_smoothness_certificate(const PolyComplex& sigma,
                                                                   std::size_t face_index) {
  EnrichedFan quotient;
  try {
    quotient = star_quotient(sigma, face_index);
  } catch (const Error& e) {
    if (e.code() == Err::ContainsLine) return std::nullopt;
    throw;
  }
  std::size_t d = quotient.downstairs_rank();
  if (d == 0 || d + 1 > 5) return std::nullopt;  // desk-scale ground bound
  std::size_t g = d + 1;
  std::size_t matroid_rank = static_cast<std::size_t>(quotient.fan.dim()) + 1;
  if (matroid_rank > g) return std::nullopt;

  // Rays of the quotient fan, and a maximal independent subset of them.
  std::vector<IntVec> fan_rays;
  for (std::size_t i = 0; i < quotient.fan.face_count(); ++i)
    if (quotient.fan.face_dim(i) == 1) fan_rays.push_back(quotient.fan.face(i).rays().front());
  Mat ray_mat(fan_rays.size(), d);
  for (std::size_t i = 0; i < fan_rays.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) ray_mat.at(i, j) = Rat(fan_rays[i][j]);
  Rref reduced = row_reduce(ray_mat);
  if (reduced.rank() != d) return std::nullopt;
  // Select d rays forming a basis of the span (greedy by rank growth).
  std::vector<std::size_t> pick;
  Mat acc(0, d);
  for (std::size_t i = 0; i < fan_rays.size() && pick.size() < d; ++i) {
    Mat trial(acc.rows() + 1, d);
    for (std::size_t r = 0; r < acc.rows(); ++r)
      for (std::size_t j = 0; j < d; ++j) trial.at(r, j) = acc.at(r, j);
    for (std::size_t j = 0; j < d; ++j) trial.at(acc.rows(), j) = Rat(fan_rays[i][j]);
    if (row_reduce(trial).rank() == acc.rows() + 1) {
      pick.push_back(i);
      acc = std::move(trial);
    }
  }
  Mat chosen(d, d);  // columns are the picked rays
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t j = 0; j < d; ++j) chosen.at(j, c) = Rat(fan_rays[pick[c]][j]);

  // Every matroid on g elements of the forced rank, by basis subsets.
  std::vector<Subset> all_candidates;
  Subset full = (Subset{1} << g) - 1;
  for (Subset s = 0; s <= full; ++s)
    if (std::popcount(s) == static_cast<int>(matroid_rank)) all_candidates.push_back(s);
  std::set<std::vector<Subset>> seen;
  for (Subset pickmask = 1; pickmask < (Subset{1} << all_candidates.size()); ++pickmask) {
    std::vector<Subset> bases;
    for (std::size_t i = 0; i < all_candidates.size(); ++i)
      if (pickmask & (Subset{1} << i)) bases.push_back(all_candidates[i]);
    Matroid m;
    try {
      m = Matroid::from_bases(g, bases);
    } catch (const Error&) {
      continue;
    }
    if (!seen.insert(m.flats()).second) continue;
    if (m.rank() != matroid_rank) continue;
    std::vector<IntVec> berg_rays;
    for (Subset f : m.proper_flats()) berg_rays.push_back(flat_vector(f, g));
    if (berg_rays.size() != fan_rays.size()) continue;

    // Try mapping the picked rays onto each ordered d-tuple of Bergman rays:
    // solving B·chosen = target fixes B, which is verified in full.
    std::vector<std::size_t> order(d);
    auto rec = [&](auto&& self, std::size_t depth,
                   Subset used) -> std::optional<SmoothnessCertificate> {
      if (depth == d) {
        Mat target(d, d);
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t j = 0; j < d; ++j) target.at(j, c) = Rat(berg_rays[order[c]][j]);
        Mat b(d, d);
        for (std::size_t j = 0; j < d; ++j) {
          RatVec rhs(d);
          for (std::size_t c = 0; c < d; ++c) rhs[c] = target.at(j, c);
          std::optional<RatVec> x = solve(chosen.transposed(), rhs);
          if (!x) return std::nullopt;
          for (std::size_t c = 0; c < d; ++c) b.at(j, c) = (*x)[c];
        }
        if (!is_unimodular(b)) return std::nullopt;
        SmoothnessCertificate cert{face_index, m, b};
        if (check_smooth_certificate(sigma, cert)) return cert;
        return std::nullopt;
      }
      for (std::size_t i = 0; i < berg_rays.size(); ++i) {
        if (used & (Subset{1} << i)) continue;
        order[depth] = i;
        if (auto out = self(self, depth + 1, used | (Subset{1} << i))) return out;
      }
      return std::nullopt;
    };
    if (auto found = rec(rec, 0, 0)) return found;
  }
  return std::nullopt;
}

}  // namespace trop
