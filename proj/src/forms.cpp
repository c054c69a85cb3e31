#include "trop/forms.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <utility>
#include <vector>

#include "trop/error.hpp"
#include "trop/polyhedron.hpp"
#include "trop/rational.hpp"

namespace trop {

FormSpace::FormSpace(OpenSet open, std::size_t degree, std::vector<std::size_t> stars,
                     std::vector<std::size_t> widths, std::vector<QuotientSpace> star_ones,
                     QuotientSpace space)
    : m_open(std::move(open)),
      m_degree(degree),
      m_stars(std::move(stars)),
      m_widths(std::move(widths)),
      m_star_ones(std::move(star_ones)),
      m_space(std::move(space)) {
  m_offsets.reserve(m_widths.size());
  for (std::size_t w : m_widths) {
    m_offsets.push_back(m_total);
    m_total += w;
  }
}

bool FormSpace::contains(const RatVec& rep) const {
  return rep.size() == m_total && m_space.numerator().contains(rep);
}

RatVec FormSpace::coordinates_of(const RatVec& rep) const { return m_space.reduce(rep); }

namespace {

// A polyhedral complex viewed as trivially enriched over its own lattice, or
// a genuine enriched fan. Covectors live upstairs; openness, stars and the
// span of an open set are read on the face poset downstairs.
struct Host {
  const PolyComplex* plain = nullptr;
  const EnrichedFan* enriched = nullptr;

  const PolyComplex& poset() const { return plain != nullptr ? *plain : enriched->fan; }
  std::size_t ambient() const {
    return plain != nullptr ? plain->rank() : enriched->upstairs_rank();
  }
  const std::vector<IntVec>& rays() const {
    return plain != nullptr ? plain->compactification() : enriched->compactification;
  }
};

// Compactification directions interior to the recession of some member: the
// directions along which the open set reaches out to its boundary at
// infinity. Forms over the set must vanish on these.
std::vector<RatVec> active_directions(const Host& h, const std::vector<std::size_t>& members) {
  const PolyComplex& sigma = h.poset();
  std::vector<RatVec> out;
  for (const IntVec& r : h.rays()) {
    RatVec direction = to_rat_vec(r);
    RatVec probe = h.plain != nullptr ? direction : h.enriched->projection.apply(direction);
    bool active = false;
    for (std::size_t m : members) {
      if (h.plain != nullptr) {
        if (recession_cone(sigma.face(m)).in_relint(probe)) {
          active = true;
          break;
        }
      } else if (sigma.face(m).in_relint(probe)) {
        active = true;
        break;
      }
    }
    if (active) out.push_back(direction);
  }
  return out;
}

// Covectors vanishing on every direction the members move in, pulled back
// upstairs for enriched fans. These act as zero on the open set.
Subspace denominator_space(const Host& h, const std::vector<std::size_t>& members) {
  const PolyComplex& sigma = h.poset();
  Subspace moved = Subspace::zero(sigma.rank());
  for (std::size_t m : members) moved = sum(moved, sigma.face(m).tangent_space());
  Subspace ann = annihilator(moved);
  if (h.plain != nullptr) return ann;
  return Subspace::span_of(ann.basis() * h.enriched->projection);
}

// 1-forms over the open star of a face, presented inside the upstairs dual.
QuotientSpace star_one_space(const Host& h, std::size_t face) {
  const std::vector<std::size_t>& members = h.poset().open_star(face).members;
  Subspace den = denominator_space(h, members);
  Mat active(0, h.ambient());
  for (const RatVec& r : active_directions(h, members)) active.append_row(r);
  Subspace num = sum(annihilator(Subspace::span_of(active)), den);
  return QuotientSpace(num, den);
}

// Memoized per-star data for one space construction.
struct StarCache {
  const Host& host;
  std::map<std::size_t, QuotientSpace> ones;

  const QuotientSpace& one(std::size_t face) {
    auto it = ones.find(face);
    if (it == ones.end()) it = ones.emplace(face, star_one_space(host, face)).first;
    return it->second;
  }
};

// Class-coordinate matrix of the 1-form restriction between star spaces;
// defined whenever the source star contains the target star, since then the
// source numerator sits inside the target numerator.
Mat one_transition(const QuotientSpace& from, const QuotientSpace& to) {
  Mat m(to.dim(), from.dim());
  for (std::size_t j = 0; j < from.dim(); ++j) {
    RatVec col = to.reduce(from.section_basis().row(j));
    for (std::size_t i = 0; i < to.dim(); ++i) m.at(i, j) = col[i];
  }
  return m;
}

// Degree-p block over one star (p >= 2): wedge coordinates over the star's
// 1-form basis, modulo everything restricting to zero on the open star of
// every maximal cell in it.
QuotientSpace star_block_space(StarCache& cache, std::size_t face, std::size_t p) {
  const PolyComplex& sigma = cache.host.poset();
  const QuotientSpace one = cache.one(face);
  std::size_t width = binomial(one.dim(), p);
  Subspace kill = Subspace::full(width);
  for (std::size_t m : sigma.open_star(face).members) {
    if (!sigma.is_maximal(m)) continue;
    Mat compound = wedge_rows(one_transition(one, cache.one(m)), p);
    kill = intersect(kill, kernel(compound));
  }
  return QuotientSpace(Subspace::full(width), kill);
}

std::vector<std::size_t> minimal_members(const PolyComplex& sigma,
                                         const std::vector<std::size_t>& members) {
  std::vector<std::size_t> mins;
  for (std::size_t i : members) {
    bool minimal = true;
    for (std::size_t j : members) {
      if (j != i && sigma.is_subface(j, i)) {
        minimal = false;
        break;
      }
    }
    if (minimal) mins.push_back(i);
  }
  return mins;
}

void embed_block(RatVec& total, std::size_t offset, const RatVec& block) {
  for (std::size_t k = 0; k < block.size(); ++k) total[offset + k] = block[k];
}

FormSpace build_forms(const Host& h, const OpenSet& u, std::size_t p) {
  const PolyComplex& sigma = h.poset();
  if (!sigma.is_open(u)) throw Error(Err::NotOpen, "forms need a poset-open set");
  std::size_t n = h.ambient();

  std::vector<std::size_t> stars = minimal_members(sigma, u.members);
  StarCache cache{h, {}};

  std::vector<QuotientSpace> star_ones;
  std::vector<QuotientSpace> blocks;
  std::vector<std::size_t> widths;
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  for (std::size_t f : stars) {
    star_ones.push_back(cache.one(f));
    if (p == 0) {
      blocks.emplace_back(Subspace::full(1), Subspace::zero(1));
    } else if (p == 1) {
      blocks.push_back(star_ones.back());
    } else {
      blocks.push_back(star_block_space(cache, f, p));
    }
    offsets.push_back(total);
    widths.push_back(blocks.back().ambient_dim());
    total += widths.back();
  }

  Mat num_rows(0, total);
  Mat killed_rows(0, total);
  for (std::size_t s = 0; s < stars.size(); ++s) {
    for (std::size_t r = 0; r < blocks[s].numerator().basis().rows(); ++r) {
      RatVec row(total);
      embed_block(row, offsets[s], blocks[s].numerator().basis().row(r));
      num_rows.append_row(row);
    }
    for (std::size_t r = 0; r < blocks[s].killed().basis().rows(); ++r) {
      RatVec row(total);
      embed_block(row, offsets[s], blocks[s].killed().basis().row(r));
      killed_rows.append_row(row);
    }
  }

  // Overlap constraints: on the star of each minimal face of a pairwise
  // overlap, the two blocks must restrict to the same class. Constraints at
  // larger overlap faces follow, since the forms declared zero only grow
  // along restriction.
  Mat constraints(0, total);
  std::vector<std::vector<std::size_t>> star_members;
  for (std::size_t f : stars) star_members.push_back(sigma.open_star(f).members);
  for (std::size_t a = 0; a < stars.size(); ++a) {
    for (std::size_t b = a + 1; b < stars.size(); ++b) {
      std::vector<std::size_t> overlap;
      std::set_intersection(star_members[a].begin(), star_members[a].end(),
                            star_members[b].begin(), star_members[b].end(),
                            std::back_inserter(overlap));
      for (std::size_t g : minimal_members(sigma, overlap)) {
        if (p == 0) {
          RatVec row(total);
          row[offsets[a]] = 1;
          row[offsets[b]] = -1;
          constraints.append_row(row);
        } else if (p == 1) {
          const Mat tests = annihilator(cache.one(g).killed()).basis();
          for (std::size_t r = 0; r < tests.rows(); ++r) {
            RatVec row(total);
            for (std::size_t k = 0; k < n; ++k) {
              row[offsets[a] + k] = tests.at(r, k);
              row[offsets[b] + k] = -tests.at(r, k);
            }
            constraints.append_row(row);
          }
        } else {
          QuotientSpace block_g = star_block_space(cache, g, p);
          Mat to_a = wedge_rows(one_transition(star_ones[a], cache.one(g)), p);
          Mat to_b = wedge_rows(one_transition(star_ones[b], cache.one(g)), p);
          const Mat tests = annihilator(block_g.killed()).basis();
          for (std::size_t r = 0; r < tests.rows(); ++r) {
            RatVec row(total);
            embed_block(row, offsets[a], to_a.apply_left(tests.row(r)));
            RatVec via_b = to_b.apply_left(tests.row(r));
            for (std::size_t k = 0; k < via_b.size(); ++k) row[offsets[b] + k] = -via_b[k];
            constraints.append_row(row);
          }
        }
      }
    }
  }

  Subspace numerator = intersect(Subspace::span_of(num_rows), kernel(constraints));
  QuotientSpace glued(numerator, Subspace::span_of(killed_rows));
  return FormSpace(u, p, std::move(stars), std::move(widths), std::move(star_ones),
                   std::move(glued));
}

Mat restrict_impl(const Host& h, const OpenSet& outer, const OpenSet& inner, std::size_t p) {
  const PolyComplex& sigma = h.poset();
  FormSpace big = build_forms(h, outer, p);
  FormSpace small = build_forms(h, inner, p);
  if (!std::includes(outer.members.begin(), outer.members.end(), inner.members.begin(),
                     inner.members.end())) {
    throw Error(Err::NotNested, "restriction needs nested open sets");
  }

  // For each covering star of the inner set pick a covering star of the
  // outer set containing it; the block transported from there represents the
  // restricted section.
  std::vector<std::size_t> source_star(small.stars().size());
  for (std::size_t t = 0; t < small.stars().size(); ++t) {
    bool found = false;
    for (std::size_t a = 0; a < big.stars().size(); ++a) {
      if (sigma.is_subface(big.stars()[a], small.stars()[t])) {
        source_star[t] = a;
        found = true;
        break;
      }
    }
    if (!found) throw Error(Err::Internal, "inner star not covered by an outer star");
  }

  Mat out(small.dim(), big.dim());
  for (std::size_t j = 0; j < big.dim(); ++j) {
    RatVec rep = big.basis().row(j);
    RatVec target(small.total_width());
    for (std::size_t t = 0; t < small.stars().size(); ++t) {
      std::size_t a = source_star[t];
      RatVec block(big.block_widths()[a]);
      for (std::size_t k = 0; k < block.size(); ++k) block[k] = rep[big.block_offset(a) + k];
      if (p >= 2) {
        Mat compound =
            wedge_rows(one_transition(big.star_one_forms(a), small.star_one_forms(t)), p);
        block = compound.apply(block);
      }
      embed_block(target, small.block_offset(t), block);
    }
    RatVec col = small.coordinates_of(target);
    for (std::size_t i = 0; i < small.dim(); ++i) out.at(i, j) = col[i];
  }
  return out;
}

}  // namespace

FormSpace one_forms(const PolyComplex& sigma, const OpenSet& u) {
  return build_forms(Host{&sigma, nullptr}, u, 1);
}

FormSpace one_forms(const EnrichedFan& delta, const OpenSet& u) {
  return build_forms(Host{nullptr, &delta}, u, 1);
}

FormSpace p_forms(const PolyComplex& sigma, const OpenSet& u, std::size_t degree) {
  return build_forms(Host{&sigma, nullptr}, u, degree);
}

FormSpace p_forms(const EnrichedFan& delta, const OpenSet& u, std::size_t degree) {
  return build_forms(Host{nullptr, &delta}, u, degree);
}

Mat restrict_forms(const PolyComplex& sigma, const OpenSet& outer, const OpenSet& inner,
                   std::size_t degree) {
  return restrict_impl(Host{&sigma, nullptr}, outer, inner, degree);
}

Mat restrict_forms(const EnrichedFan& delta, const OpenSet& outer, const OpenSet& inner,
                   std::size_t degree) {
  return restrict_impl(Host{nullptr, &delta}, outer, inner, degree);
}

Mat star_quotient_forms_iso(const PolyComplex& sigma, std::size_t face_index) {
  FormSpace source = one_forms(sigma, sigma.open_star(face_index));
  EnrichedFan quotient = star_quotient(sigma, face_index);
  FormSpace target = one_forms(quotient, quotient.fan.whole_open());
  Mat m(target.dim(), source.dim());
  for (std::size_t j = 0; j < source.dim(); ++j) {
    RatVec rep = source.basis().row(j);
    if (!target.contains(rep)) {
      throw Error(Err::Internal, "star quotient comparison undefined for this compactification");
    }
    RatVec col = target.coordinates_of(rep);
    for (std::size_t i = 0; i < target.dim(); ++i) m.at(i, j) = col[i];
  }
  return m;
}

namespace {

// Coordinates of each basis class of `space`, per covering star, on the
// wedge-power basis induced by that star's 1-form section basis. For degree 1
// this reduces the raw covector block to class coordinates; for higher
// degrees the stored block already carries wedge coordinates.
std::vector<std::vector<RatVec>> star_wedge_coords(const FormSpace& space) {
  std::vector<std::vector<RatVec>> coords(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    RatVec rep = space.basis().row(i);
    for (std::size_t s = 0; s < space.stars().size(); ++s) {
      RatVec block(space.block_widths()[s]);
      for (std::size_t k = 0; k < block.size(); ++k) block[k] = rep[space.block_offset(s) + k];
      if (space.degree() == 1) block = space.star_one_forms(s).reduce(block);
      coords[i].push_back(block);
    }
  }
  return coords;
}

}  // namespace

Mat wedge_pairing(const FormSpace& a, const FormSpace& b, const FormSpace& into) {
  if (a.degree() == 0 || b.degree() == 0 || into.degree() != a.degree() + b.degree()) {
    throw Error(Err::DimensionMismatch, "wedge pairing needs positive degrees p, q and a target of degree p + q");
  }
  if (a.open().members != b.open().members || a.open().members != into.open().members ||
      a.stars() != b.stars() || a.stars() != into.stars()) {
    throw Error(Err::DimensionMismatch, "wedge pairing needs spaces over the same open set");
  }
  const std::vector<std::vector<RatVec>> left = star_wedge_coords(a);
  const std::vector<std::vector<RatVec>> right = star_wedge_coords(b);
  Mat out(into.dim(), a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      RatVec rep(into.total_width());
      for (std::size_t s = 0; s < a.stars().size(); ++s) {
        std::size_t d = a.star_one_forms(s).dim();
        embed_block(rep, into.block_offset(s),
                    wedge_vectors(left[i][s], a.degree(), right[j][s], b.degree(), d));
      }
      RatVec col = into.coordinates_of(rep);
      for (std::size_t r = 0; r < into.dim(); ++r) out.at(r, i * b.dim() + j) = col[r];
    }
  }
  return out;
}

}  // namespace trop
