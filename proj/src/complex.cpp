#include "trop/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "trop/error.hpp"
#include "trop/lattice.hpp"
#include "trop/linalg.hpp"

namespace trop {

namespace {

RatVec origin(std::size_t n) { return RatVec(n, Rat(0)); }

Polyhedron cone_from_rays(std::size_t n, const std::vector<IntVec>& rays,
                          const std::vector<IntVec>& lineality) {
  return Polyhedron::from_generators(n, {origin(n)}, rays, lineality);
}

// Closure of the cone over P placed at height one.
Polyhedron lift_to_cone(const Polyhedron& p) {
  std::size_t n = p.ambient_dim();
  std::vector<IntVec> rays, lin;
  for (const RatVec& v : p.vertices()) {
    RatVec lifted(v);
    lifted.push_back(Rat(1));
    rays.push_back(primitive_of_rational(lifted));
  }
  for (const IntVec& r : p.rays()) {
    IntVec lifted(r);
    lifted.push_back(Int(0));
    rays.push_back(lifted);
  }
  for (const IntVec& l : p.lineality()) {
    IntVec lifted(l);
    lifted.push_back(Int(0));
    lin.push_back(lifted);
  }
  return cone_from_rays(n + 1, rays, lin);
}

// The recession cone of P placed at height zero.
Polyhedron lift_recession(const Polyhedron& p) {
  Polyhedron rec = recession_cone(p);
  std::size_t n = p.ambient_dim();
  std::vector<IntVec> rays, lin;
  for (const IntVec& r : rec.rays()) {
    IntVec lifted(r);
    lifted.push_back(Int(0));
    rays.push_back(lifted);
  }
  for (const IntVec& l : rec.lineality()) {
    IntVec lifted(l);
    lifted.push_back(Int(0));
    lin.push_back(lifted);
  }
  return cone_from_rays(n + 1, rays, lin);
}

void check_compactification(std::vector<IntVec>& rays, std::size_t rank) {
  for (const IntVec& r : rays) {
    if (r.size() != rank) throw Error(Err::DimensionMismatch, "compactification vector width");
    if (is_zero_vec(r)) throw Error(Err::NonPrimitiveRay, "zero compactification vector");
    if (primitive(r) != r)
      throw Error(Err::NonPrimitiveRay, "compactification vector is not primitive");
  }
  std::sort(rays.begin(), rays.end(), [](const IntVec& a, const IntVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
}

}  // namespace

PolyComplex PolyComplex::build(std::size_t rank, const std::vector<Polyhedron>& input_faces,
                               std::vector<IntVec> compactification,
                               const std::vector<std::optional<Int>>& input_weights) {
  PolyComplex out;
  out.m_rank = rank;
  check_compactification(compactification, rank);
  out.m_compactification = std::move(compactification);

  std::map<std::string, Polyhedron> pool;
  std::map<std::string, Int> weight_by_key;
  for (std::size_t idx = 0; idx < input_faces.size(); ++idx) {
    const Polyhedron& f = input_faces[idx];
    if (f.ambient_dim() != rank)
      throw Error(Err::DimensionMismatch, "face in a different ambient lattice");
    if (f.is_empty()) throw Error(Err::NotFaceClosed, "empty polyhedron listed as a face");
    for (Polyhedron& g : f.all_faces()) {
      std::string key = g.repr_key();
      pool.emplace(std::move(key), std::move(g));
    }
    if (idx < input_weights.size() && input_weights[idx].has_value()) {
      std::string key = f.repr_key();
      auto [it, fresh] = weight_by_key.emplace(key, *input_weights[idx]);
      if (!fresh && it->second != *input_weights[idx])
        throw Error(Err::MissingWeights, "conflicting weights on one face");
    }
  }

  out.m_faces.reserve(pool.size());
  for (auto& [key, face] : pool) out.m_faces.push_back(std::move(face));
  std::stable_sort(out.m_faces.begin(), out.m_faces.end(),
                   [](const Polyhedron& a, const Polyhedron& b) {
                     if (a.dim() != b.dim()) return a.dim() < b.dim();
                     return a.repr_key() < b.repr_key();
                   });
  for (const Polyhedron& f : out.m_faces) out.m_dims.push_back(f.dim());

  std::size_t count = out.m_faces.size();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      Polyhedron cap = Polyhedron::intersection(out.m_faces[i], out.m_faces[j]);
      if (cap.is_empty()) continue;
      if (!cap.is_face_of(out.m_faces[i]) || !cap.is_face_of(out.m_faces[j]))
        throw Error(Err::BadIntersection, "intersection of two faces is not a face of each");
    }

  out.m_subface.assign(count, std::vector<bool>(count, false));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      out.m_subface[i][j] = out.m_faces[i].subset_of(out.m_faces[j]);
  for (std::size_t i = 0; i < count; ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < count && maximal; ++j)
      if (j != i && out.m_subface[i][j]) maximal = false;
    if (maximal) out.m_maximal.push_back(i);
  }

  for (const auto& [key, w] : weight_by_key) {
    for (std::size_t i = 0; i < count; ++i)
      if (out.m_faces[i].repr_key() == key) {
        out.m_weights.emplace(i, w);
        break;
      }
  }
  return out;
}

int PolyComplex::dim() const {
  int d = -1;
  for (int fd : m_dims) d = std::max(d, fd);
  return d;
}

bool PolyComplex::is_maximal(std::size_t i) const {
  return std::binary_search(m_maximal.begin(), m_maximal.end(), i);
}

std::optional<Int> PolyComplex::weight(std::size_t i) const {
  auto it = m_weights.find(i);
  if (it == m_weights.end()) return std::nullopt;
  return it->second;
}

bool PolyComplex::is_fan() const {
  for (const Polyhedron& f : m_faces)
    if (!f.is_cone()) return false;
  return true;
}

bool PolyComplex::is_pure() const {
  for (std::size_t i : m_maximal)
    if (m_dims[i] != dim()) return false;
  return true;
}

std::size_t PolyComplex::find_face(const Polyhedron& p) const {
  for (std::size_t i = 0; i < m_faces.size(); ++i)
    if (m_faces[i] == p) return i;
  throw Error(Err::FaceNotInComplex, "no such face in the complex");
}

std::optional<std::size_t> PolyComplex::face_containing(const RatVec& x) const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < m_faces.size(); ++i)
    if (m_faces[i].contains(x) && (!best || m_dims[i] < m_dims[*best])) best = i;
  return best;
}

OpenSet PolyComplex::open_star(std::size_t face_index) const {
  if (face_index >= m_faces.size()) throw Error(Err::FaceNotInComplex, "face index out of range");
  OpenSet u;
  for (std::size_t j = 0; j < m_faces.size(); ++j)
    if (m_subface[face_index][j]) u.members.push_back(j);
  return u;
}

OpenSet PolyComplex::whole_open() const {
  OpenSet u;
  for (std::size_t j = 0; j < m_faces.size(); ++j) u.members.push_back(j);
  return u;
}

bool PolyComplex::is_open(const OpenSet& u) const {
  for (std::size_t m : u.members) {
    if (m >= m_faces.size()) return false;
    for (std::size_t j = 0; j < m_faces.size(); ++j)
      if (m_subface[m][j] && !std::binary_search(u.members.begin(), u.members.end(), j))
        return false;
  }
  return std::is_sorted(u.members.begin(), u.members.end());
}

OpenSet PolyComplex::union_open(const OpenSet& a, const OpenSet& b) {
  OpenSet u;
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                 std::back_inserter(u.members));
  return u;
}

bool PolyComplex::operator==(const PolyComplex& rhs) const {
  return m_rank == rhs.m_rank && m_faces == rhs.m_faces &&
         m_compactification == rhs.m_compactification && m_weights == rhs.m_weights;
}

EnrichedFan make_enriched(PolyComplex fan, Mat projection, std::vector<IntVec> compactification) {
  if (!fan.is_fan()) throw Error(Err::FanViolation, "enriched structure requires a fan");
  if (fan.face_count() == 0) throw Error(Err::FanViolation, "empty fan");
  for (const Polyhedron& f : fan.faces())
    if (f.has_lineality())
      throw Error(Err::ContainsLine, "fan cone contains a nontrivial linear subspace");
  fan.find_face(Polyhedron::point(origin(fan.rank())));  // origin cone must be a member
  if (projection.rows() != fan.rank())
    throw Error(Err::DimensionMismatch, "projection does not land in the fan lattice");
  if (!is_surjective_lattice_map(projection))
    throw Error(Err::BadBasis, "projection is not a saturated lattice surjection");
  for (const IntVec& r : compactification) {
    if (r.size() != projection.cols())
      throw Error(Err::DimensionMismatch, "compactification vector width");
    if (is_zero_vec(r) || primitive(r) != r)
      throw Error(Err::NonPrimitiveRay, "compactification vector is not primitive");
  }
  std::sort(compactification.begin(), compactification.end(),
            [](const IntVec& a, const IntVec& b) {
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
            });
  compactification.erase(std::unique(compactification.begin(), compactification.end()),
                         compactification.end());
  return EnrichedFan{std::move(fan), std::move(projection), std::move(compactification)};
}

EnrichedFan base_fan_plain() {
  PolyComplex fan = PolyComplex::build(0, {Polyhedron::point(RatVec{})});
  return make_enriched(std::move(fan), Mat(0, 0), {});
}

EnrichedFan base_fan_dagger() {
  PolyComplex fan = PolyComplex::build(0, {Polyhedron::point(RatVec{})});
  return make_enriched(std::move(fan), Mat(0, 1), {});
}

PolyComplex recession_fan(const PolyComplex& sigma) {
  std::vector<Polyhedron> cones;
  for (const Polyhedron& f : sigma.faces()) cones.push_back(recession_cone(f));
  try {
    return PolyComplex::build(sigma.rank(), cones, sigma.compactification());
  } catch (const Error& e) {
    if (e.code() == Err::BadIntersection || e.code() == Err::NotFaceClosed)
      throw Error(Err::FanViolation, "recession cones do not form a fan");
    throw;
  }
}

EnrichedFan cone_over(const PolyComplex& sigma) {
  std::size_t n = sigma.rank();
  std::vector<Polyhedron> cones;
  for (const Polyhedron& f : sigma.faces()) {
    cones.push_back(lift_to_cone(f));
    cones.push_back(lift_recession(f));
  }
  std::vector<IntVec> lifted_r;
  for (const IntVec& r : sigma.compactification()) {
    IntVec lifted(r);
    lifted.push_back(Int(0));
    lifted_r.push_back(lifted);
  }
  PolyComplex fan;
  try {
    fan = PolyComplex::build(n + 1, cones, {});
  } catch (const Error& e) {
    if (e.code() == Err::BadIntersection || e.code() == Err::NotFaceClosed)
      throw Error(Err::FanViolation, "cones over the faces do not form a fan");
    throw;
  }
  return make_enriched(std::move(fan), Mat::identity(n + 1), std::move(lifted_r));
}

std::vector<std::size_t> cone_over_members(const PolyComplex& sigma, const OpenSet& u,
                                           ConeRange range) {
  if (!sigma.is_open(u)) throw Error(Err::NotOpen, "member set is not upward closed");
  EnrichedFan lifted = cone_over(sigma);
  std::set<std::size_t> members;
  for (std::size_t i : u.members) members.insert(lifted.fan.find_face(lift_to_cone(sigma.face(i))));
  if (range == ConeRange::AllFaces) {
    for (const Polyhedron& f : sigma.faces())
      members.insert(lifted.fan.find_face(lift_recession(f)));
  } else {
    for (std::size_t i : u.members)
      members.insert(lifted.fan.find_face(lift_recession(sigma.face(i))));
  }
  return std::vector<std::size_t>(members.begin(), members.end());
}

EnrichedFan star_quotient(const PolyComplex& sigma, std::size_t face_index) {
  if (face_index >= sigma.face_count())
    throw Error(Err::FaceNotInComplex, "face index out of range");
  const Polyhedron& p = sigma.face(face_index);
  RatVec w = p.relint_point();
  Mat proj = lattice_quotient_projection(p.tangent_space().basis());
  std::size_t down = proj.rows();

  std::vector<Polyhedron> cones;
  for (std::size_t q = 0; q < sigma.face_count(); ++q) {
    if (!sigma.is_subface(face_index, q)) continue;
    const Polyhedron& face = sigma.face(q);
    std::vector<IntVec> rays, lins;
    for (const RatVec& v : face.vertices()) {
      RatVec d(v.size());
      for (std::size_t j = 0; j < v.size(); ++j) d[j] = v[j] - w[j];
      RatVec image = proj.apply(d);
      if (!is_zero_vec(image)) rays.push_back(primitive_of_rational(image));
    }
    for (const IntVec& r : face.rays()) {
      RatVec image = proj.apply(to_rat_vec(r));
      if (!is_zero_vec(image)) rays.push_back(primitive_of_rational(image));
    }
    for (const IntVec& l : face.lineality()) {
      RatVec image = proj.apply(to_rat_vec(l));
      if (!is_zero_vec(image)) lins.push_back(primitive_of_rational(image));
    }
    cones.push_back(cone_from_rays(down, rays, lins));
  }

  PolyComplex fan;
  try {
    fan = PolyComplex::build(down, cones, {});
  } catch (const Error& e) {
    if (e.code() == Err::BadIntersection || e.code() == Err::NotFaceClosed)
      throw Error(Err::FanViolation, "star-quotient cones do not form a fan");
    throw;
  }

  std::vector<IntVec> r_prime;
  for (const IntVec& r : sigma.compactification()) {
    RatVec rr = to_rat_vec(r);
    for (std::size_t q = 0; q < sigma.face_count(); ++q) {
      if (!sigma.is_subface(face_index, q)) continue;
      if (recession_cone(sigma.face(q)).contains(rr)) {
        r_prime.push_back(r);
        break;
      }
    }
  }
  return make_enriched(std::move(fan), std::move(proj), std::move(r_prime));
}

bool is_refinement(const PolyComplex& fine, const PolyComplex& coarse) {
  if (fine.rank() != coarse.rank()) return false;
  if (fine.compactification() != coarse.compactification()) return false;
  for (const Polyhedron& f : fine.faces()) {
    bool inside = false;
    for (const Polyhedron& c : coarse.faces())
      if (f.subset_of(c)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  std::vector<Polyhedron> fine_max;
  for (std::size_t i : fine.maximal_faces()) fine_max.push_back(fine.face(i));
  for (std::size_t i : coarse.maximal_faces())
    if (!support_covered(coarse.face(i), fine_max)) return false;
  return true;
}

bool support_covered(const Polyhedron& target, const std::vector<Polyhedron>& pieces) {
  if (target.is_empty()) return true;
  int d = target.dim();
  std::vector<const Polyhedron*> relevant;
  for (const Polyhedron& q : pieces)
    if (!q.is_empty() && Polyhedron::intersection(q, target).dim() == d)
      relevant.push_back(&q);
  if (relevant.empty()) return false;

  // All constraint hyperplanes of the relevant pieces, sign-normalized.
  std::set<std::pair<IntVec, Rat>> hyperplanes;
  auto add_plane = [&](IntVec normal, Rat offset) {
    RatVec joint(to_rat_vec(normal));
    joint.push_back(-offset);
    IntVec prim = primitive_of_rational(joint);
    for (const Int& x : prim) {
      if (x == 0) continue;
      if (x < 0)
        for (Int& y : prim) y = -y;
      break;
    }
    IntVec m(prim.begin(), prim.end() - 1);
    Rat a = -Rat(prim.back());
    hyperplanes.emplace(std::move(m), std::move(a));
  };
  for (const Polyhedron* q : relevant) {
    for (const auto& c : q->facet_constraints()) add_plane(c.normal, c.offset);
    for (const auto& c : q->equation_constraints()) add_plane(c.normal, c.offset);
  }

  std::vector<Polyhedron> cells{target};
  for (const auto& [normal, offset] : hyperplanes) {
    std::vector<Polyhedron> next;
    for (const Polyhedron& cell : cells) {
      std::vector<Polyhedron::Constraint> plus_ineqs = cell.facet_constraints();
      plus_ineqs.push_back({normal, offset});
      Polyhedron plus =
          Polyhedron::from_hrep(cell.ambient_dim(), plus_ineqs, cell.equation_constraints());
      if (plus == cell) {
        next.push_back(cell);
        continue;
      }
      IntVec neg(normal.size());
      for (std::size_t j = 0; j < normal.size(); ++j) neg[j] = -normal[j];
      std::vector<Polyhedron::Constraint> minus_ineqs = cell.facet_constraints();
      minus_ineqs.push_back({neg, -offset});
      Polyhedron minus =
          Polyhedron::from_hrep(cell.ambient_dim(), minus_ineqs, cell.equation_constraints());
      if (minus == cell) {
        next.push_back(cell);
        continue;
      }
      if (plus.dim() == d) next.push_back(std::move(plus));
      if (minus.dim() == d) next.push_back(std::move(minus));
    }
    cells = std::move(next);
  }

  for (const Polyhedron& cell : cells) {
    RatVec sample = cell.relint_point();
    bool covered = false;
    for (const Polyhedron* q : relevant)
      if (q->contains(sample)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool support_equal(const std::vector<Polyhedron>& a, const std::vector<Polyhedron>& b) {
  for (const Polyhedron& target : a)
    if (!support_covered(target, b)) return false;
  for (const Polyhedron& target : b)
    if (!support_covered(target, a)) return false;
  return true;
}

PolyComplex stellar_refine(const PolyComplex& sigma, std::size_t face_index) {
  if (face_index >= sigma.face_count())
    throw Error(Err::FaceNotInComplex, "face index out of range");
  std::size_t n = sigma.rank();
  RatVec w = sigma.face(face_index).relint_point();
  RatVec lifted_w(w);
  lifted_w.push_back(Rat(1));
  IntVec rho = primitive_of_rational(lifted_w);
  RatVec rho_rat = to_rat_vec(rho);

  EnrichedFan up = cone_over(sigma);
  std::vector<Polyhedron> new_cones;
  for (std::size_t idx : up.fan.maximal_faces()) {
    const Polyhedron& cone = up.fan.face(idx);
    if (!cone.contains(rho_rat)) {
      new_cones.push_back(cone);
      continue;
    }
    for (const Polyhedron& facet : cone.facets()) {
      if (facet.contains(rho_rat)) continue;
      std::vector<IntVec> rays = facet.rays();
      rays.push_back(rho);
      new_cones.push_back(cone_from_rays(n + 1, rays, facet.lineality()));
    }
  }

  PolyComplex refined_up = PolyComplex::build(n + 1, new_cones, {});

  std::vector<Polyhedron> cells;
  std::vector<std::optional<Int>> weights;
  for (std::size_t idx : refined_up.maximal_faces()) {
    const Polyhedron& cone = refined_up.face(idx);
    std::vector<Polyhedron::Constraint> ineqs, eqs;
    for (const auto& c : cone.facet_constraints()) {
      Polyhedron::Constraint down;
      down.normal = IntVec(c.normal.begin(), c.normal.end() - 1);
      down.offset = c.offset - Rat(c.normal.back());
      ineqs.push_back(std::move(down));
    }
    for (const auto& c : cone.equation_constraints()) {
      Polyhedron::Constraint down;
      down.normal = IntVec(c.normal.begin(), c.normal.end() - 1);
      down.offset = c.offset - Rat(c.normal.back());
      eqs.push_back(std::move(down));
    }
    Polyhedron cell = Polyhedron::from_hrep(n, ineqs, eqs);
    if (cell.is_empty()) continue;
    std::optional<Int> inherited;
    if (sigma.has_weights()) {
      RatVec sample = cell.relint_point();
      for (std::size_t orig : sigma.maximal_faces())
        if (sigma.face(orig).contains(sample)) {
          inherited = sigma.weight(orig);
          break;
        }
    }
    cells.push_back(std::move(cell));
    weights.push_back(inherited);
  }
  return PolyComplex::build(n, cells, sigma.compactification(), weights);
}

}  // namespace trop
