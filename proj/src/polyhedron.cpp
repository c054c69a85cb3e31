#include "trop/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "trop/error.hpp"
#include "trop/matrix.hpp"

namespace trop {

namespace {

Int idot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool int_vec_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool rat_vec_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Mat int_rows_to_mat(const std::vector<IntVec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rat(rows[i][j]);
  return m;
}

std::vector<IntVec> subspace_primitive_rows(const Subspace& s) {
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(primitive_of_rational(s.basis().row(i)));
  return rows;
}

// Zero out the coordinates of v at the reduced-basis pivot columns of s.
RatVec reduce_mod(const Subspace& s, RatVec v) {
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Rat c = v[s.pivot_cols()[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * s.basis().at(i, j);
  }
  return v;
}

// ---- double description ----------------------------------------------------

struct DDState {
  std::size_t d = 0;
  std::vector<IntVec> lin;
  std::vector<IntVec> rays;
  std::vector<std::vector<char>> tight;  // tight[ray][constraint]
  std::size_t processed = 0;
};

void dd_insert(DDState& dd, const IntVec& a) {
  // Lineality phase: if some lineality generator leaves the hyperplane of a,
  // split it off as the one ray crossing a and project the rest into a⊥.
  std::size_t pivot_idx = dd.lin.size();
  for (std::size_t i = 0; i < dd.lin.size(); ++i)
    if (idot(dd.lin[i], a) != 0) {
      pivot_idx = i;
      break;
    }
  if (pivot_idx < dd.lin.size()) {
    IntVec pivot = dd.lin[pivot_idx];
    Int pval = idot(pivot, a);
    if (pval < 0) {
      for (auto& x : pivot) x = -x;
      pval = -pval;
    }
    std::vector<IntVec> new_lin;
    for (std::size_t i = 0; i < dd.lin.size(); ++i) {
      if (i == pivot_idx) continue;
      Int lval = idot(dd.lin[i], a);
      IntVec combo(dd.d);
      for (std::size_t j = 0; j < dd.d; ++j) combo[j] = pval * dd.lin[i][j] - lval * pivot[j];
      new_lin.push_back(primitive(combo));
    }
    dd.lin = std::move(new_lin);
    for (std::size_t r = 0; r < dd.rays.size(); ++r) {
      Int rval = idot(dd.rays[r], a);
      if (rval == 0) continue;
      IntVec combo(dd.d);
      for (std::size_t j = 0; j < dd.d; ++j) combo[j] = pval * dd.rays[r][j] - rval * pivot[j];
      dd.rays[r] = primitive(combo);  // tight pattern is unchanged by this shift
    }
    dd.rays.push_back(pivot);
    dd.tight.emplace_back(dd.processed, char(1));
  } else {
    std::vector<Int> side(dd.rays.size());
    bool any_negative = false;
    for (std::size_t r = 0; r < dd.rays.size(); ++r) {
      side[r] = idot(dd.rays[r], a);
      if (side[r] < 0) any_negative = true;
    }
    if (any_negative) {
      std::vector<IntVec> new_rays;
      std::vector<std::vector<char>> new_tight;
      for (std::size_t r = 0; r < dd.rays.size(); ++r)
        if (side[r] >= 0) {
          new_rays.push_back(dd.rays[r]);
          new_tight.push_back(dd.tight[r]);
        }
      for (std::size_t p = 0; p < dd.rays.size(); ++p) {
        if (side[p] <= 0) continue;
        for (std::size_t q = 0; q < dd.rays.size(); ++q) {
          if (side[q] >= 0) continue;
          // Adjacency: no third ray is tight everywhere both p and q are.
          std::vector<char> common(dd.processed);
          for (std::size_t k = 0; k < dd.processed; ++k)
            common[k] = static_cast<char>(dd.tight[p][k] && dd.tight[q][k]);
          bool adjacent = true;
          for (std::size_t r = 0; r < dd.rays.size() && adjacent; ++r) {
            if (r == p || r == q) continue;
            bool covers = true;
            for (std::size_t k = 0; k < dd.processed && covers; ++k)
              if (common[k] && !dd.tight[r][k]) covers = false;
            if (covers) adjacent = false;
          }
          if (!adjacent) continue;
          IntVec combo(dd.d);
          for (std::size_t j = 0; j < dd.d; ++j)
            combo[j] = side[p] * dd.rays[q][j] - side[q] * dd.rays[p][j];
          new_rays.push_back(primitive(combo));
          new_tight.push_back(common);
        }
      }
      dd.rays = std::move(new_rays);
      dd.tight = std::move(new_tight);
    }
  }
  for (std::size_t r = 0; r < dd.rays.size(); ++r)
    dd.tight[r].push_back(static_cast<char>(idot(dd.rays[r], a) == 0));
  ++dd.processed;
}

struct ConeVRep {
  std::vector<IntVec> lin;
  std::vector<IntVec> rays;
};

ConeVRep dd_run(std::size_t d, std::vector<IntVec> ineqs, const std::vector<IntVec>& eqs) {
  DDState dd;
  dd.d = d;
  dd.lin = subspace_primitive_rows(kernel(int_rows_to_mat(eqs, d)));
  // Deterministic insertion order; drop zero rows and duplicates.
  std::sort(ineqs.begin(), ineqs.end(), int_vec_less);
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
  for (const IntVec& a : ineqs) {
    if (is_zero_vec(a)) continue;
    dd_insert(dd, a);
  }
  return ConeVRep{std::move(dd.lin), std::move(dd.rays)};
}

// Facet normals and span annihilator of the cone generated by (rays, lin):
// the minimal V-representation of the polar cone.
ConeVRep dd_polar(std::size_t d, const std::vector<IntVec>& gen_rays,
                  const std::vector<IntVec>& gen_lin) {
  return dd_run(d, gen_rays, gen_lin);
}

}  // namespace

Polyhedron Polyhedron::from_cone_hrep(std::size_t n, std::vector<IntVec> cone_ineqs,
                                      std::vector<IntVec> cone_eqs) {
  IntVec height(n + 1, Int(0));
  height[n] = 1;
  cone_ineqs.push_back(height);
  ConeVRep primal = dd_run(n + 1, cone_ineqs, cone_eqs);

  bool nonempty = false;
  for (const IntVec& r : primal.rays)
    if (r[n] > 0) nonempty = true;
  Polyhedron p;
  p.m_n = n;
  if (!nonempty) return p;

  ConeVRep polar = dd_polar(n + 1, primal.rays, primal.lin);

  // V-side, dehomogenized and reduced modulo the lineality space.
  Subspace lin_space = Subspace::span_of(int_rows_to_mat(primal.lin, n + 1));
  p.m_lineality.reserve(lin_space.dim());
  for (const IntVec& l : subspace_primitive_rows(lin_space))
    p.m_lineality.push_back(IntVec(l.begin(), l.begin() + n));
  for (const IntVec& r : primal.rays) {
    RatVec reduced = reduce_mod(lin_space, to_rat_vec(r));
    if (reduced[n] > 0) {
      RatVec v(n);
      for (std::size_t j = 0; j < n; ++j) {
        v[j] = reduced[j] / reduced[n];
        v[j].canonicalize();
      }
      p.m_vertices.push_back(std::move(v));
    } else {
      p.m_rays.push_back(primitive_of_rational(RatVec(reduced.begin(), reduced.begin() + n)));
    }
  }
  std::sort(p.m_vertices.begin(), p.m_vertices.end(), rat_vec_less);
  p.m_vertices.erase(std::unique(p.m_vertices.begin(), p.m_vertices.end()), p.m_vertices.end());
  std::sort(p.m_rays.begin(), p.m_rays.end(), int_vec_less);
  p.m_rays.erase(std::unique(p.m_rays.begin(), p.m_rays.end()), p.m_rays.end());

  // H-side: polar lineality = annihilator of the affine hull (equations),
  // polar rays = facet normals, reduced modulo the equations.
  Subspace eq_space = Subspace::span_of(int_rows_to_mat(polar.lin, n + 1));
  for (const IntVec& e : subspace_primitive_rows(eq_space)) {
    Constraint c;
    c.normal = IntVec(e.begin(), e.begin() + n);
    c.offset = -Rat(e[n]);
    p.m_equations.push_back(std::move(c));
  }
  for (const IntVec& f : polar.rays) {
    RatVec reduced = reduce_mod(eq_space, to_rat_vec(f));
    IntVec prim = primitive_of_rational(reduced);
    bool pure_height = true;
    for (std::size_t j = 0; j < n; ++j)
      if (prim[j] != 0) pure_height = false;
    if (pure_height) continue;  // the height inequality is implicit
    Constraint c;
    c.normal = IntVec(prim.begin(), prim.begin() + n);
    c.offset = -Rat(prim[n]);
    p.m_facets.push_back(std::move(c));
  }
  auto constraint_less = [](const Constraint& a, const Constraint& b) {
    if (a.normal != b.normal) return int_vec_less(a.normal, b.normal);
    return a.offset < b.offset;
  };
  std::sort(p.m_facets.begin(), p.m_facets.end(), constraint_less);
  p.m_facets.erase(std::unique(p.m_facets.begin(), p.m_facets.end()), p.m_facets.end());
  std::sort(p.m_equations.begin(), p.m_equations.end(), constraint_less);
  return p;
}

Polyhedron Polyhedron::from_hrep(std::size_t n, const std::vector<Constraint>& inequalities,
                                 const std::vector<Constraint>& equations) {
  std::vector<IntVec> cone_ineqs, cone_eqs;
  auto homogenize = [&](const Constraint& c) {
    if (c.normal.size() != n) throw Error(Err::DimensionMismatch, "constraint width");
    RatVec row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = Rat(c.normal[j]);
    row[n] = -c.offset;
    return primitive_of_rational(row);
  };
  for (const Constraint& c : inequalities) cone_ineqs.push_back(homogenize(c));
  for (const Constraint& c : equations) cone_eqs.push_back(homogenize(c));
  return from_cone_hrep(n, std::move(cone_ineqs), std::move(cone_eqs));
}

Polyhedron Polyhedron::from_generators(std::size_t n, const std::vector<RatVec>& vertices,
                                       const std::vector<IntVec>& rays,
                                       const std::vector<IntVec>& lineality) {
  Polyhedron empty;
  empty.m_n = n;
  if (vertices.empty()) return empty;

  std::vector<IntVec> gen_rays, gen_lin;
  for (const RatVec& v : vertices) {
    if (v.size() != n) throw Error(Err::DimensionMismatch, "vertex width");
    RatVec lifted(v);
    lifted.push_back(Rat(1));
    gen_rays.push_back(primitive_of_rational(lifted));
  }
  for (const IntVec& r : rays) {
    if (r.size() != n) throw Error(Err::DimensionMismatch, "ray width");
    if (is_zero_vec(r)) continue;
    IntVec lifted(r);
    lifted.push_back(Int(0));
    gen_rays.push_back(primitive(lifted));
  }
  for (const IntVec& l : lineality) {
    if (l.size() != n) throw Error(Err::DimensionMismatch, "lineality width");
    if (is_zero_vec(l)) continue;
    IntVec lifted(l);
    lifted.push_back(Int(0));
    gen_lin.push_back(lifted);
  }

  ConeVRep polar = dd_polar(n + 1, gen_rays, gen_lin);
  // Feed the facet normals back through the primal pass for the canonical
  // V-representation; equations enter as the polar's lineality.
  return from_cone_hrep(n, polar.rays, polar.lin);
}

Polyhedron Polyhedron::point(const RatVec& p) {
  return from_generators(p.size(), {p}, {}, {});
}

int Polyhedron::dim() const {
  if (is_empty()) return -1;
  return static_cast<int>(tangent_space().dim());
}

bool Polyhedron::is_cone() const {
  if (m_vertices.size() != 1) return false;
  return is_zero_vec(m_vertices[0]);
}

bool Polyhedron::contains(const RatVec& x) const {
  if (is_empty()) return false;
  if (x.size() != m_n) throw Error(Err::DimensionMismatch, "point width");
  for (const Constraint& c : m_equations)
    if (dot(x, c.normal) != c.offset) return false;
  for (const Constraint& c : m_facets)
    if (dot(x, c.normal) < c.offset) return false;
  return true;
}

bool Polyhedron::in_relint(const RatVec& x) const {
  if (is_empty()) return false;
  if (x.size() != m_n) throw Error(Err::DimensionMismatch, "point width");
  for (const Constraint& c : m_equations)
    if (dot(x, c.normal) != c.offset) return false;
  for (const Constraint& c : m_facets)
    if (dot(x, c.normal) <= c.offset) return false;
  return true;
}

RatVec Polyhedron::relint_point() const {
  if (is_empty()) throw Error(Err::Internal, "relative interior of empty polyhedron");
  RatVec p(m_n, Rat(0));
  for (const RatVec& v : m_vertices)
    for (std::size_t j = 0; j < m_n; ++j) p[j] += v[j];
  Rat scale(1, static_cast<unsigned long>(m_vertices.size()));
  scale.canonicalize();
  for (auto& x : p) x *= scale;
  for (const IntVec& r : m_rays)
    for (std::size_t j = 0; j < m_n; ++j) p[j] += Rat(r[j]);
  return p;
}

Subspace Polyhedron::tangent_space() const {
  if (is_empty()) return Subspace::zero(m_n);
  Mat dirs(0, m_n);
  for (std::size_t i = 1; i < m_vertices.size(); ++i) {
    RatVec d(m_n);
    for (std::size_t j = 0; j < m_n; ++j) d[j] = m_vertices[i][j] - m_vertices[0][j];
    dirs.append_row(d);
  }
  for (const IntVec& r : m_rays) dirs.append_row(to_rat_vec(r));
  for (const IntVec& l : m_lineality) dirs.append_row(to_rat_vec(l));
  return Subspace::span_of(dirs);
}

std::vector<Polyhedron> Polyhedron::facets() const {
  std::vector<Polyhedron> out;
  if (is_empty()) return out;
  for (const Constraint& c : m_facets) {
    std::vector<RatVec> tight_vertices;
    std::vector<IntVec> tight_rays;
    for (const RatVec& v : m_vertices)
      if (dot(v, c.normal) == c.offset) tight_vertices.push_back(v);
    for (const IntVec& r : m_rays) {
      Int s = idot(r, c.normal);
      if (s == 0) tight_rays.push_back(r);
    }
    out.push_back(from_generators(m_n, tight_vertices, tight_rays, m_lineality));
  }
  return out;
}

std::vector<Polyhedron> Polyhedron::all_faces() const {
  std::vector<Polyhedron> out;
  if (is_empty()) return out;
  std::map<std::string, Polyhedron> seen;
  std::vector<Polyhedron> queue{*this};
  seen.emplace(repr_key(), *this);
  while (!queue.empty()) {
    Polyhedron current = std::move(queue.back());
    queue.pop_back();
    for (Polyhedron& f : current.facets()) {
      std::string key = f.repr_key();
      if (seen.contains(key)) continue;
      seen.emplace(key, f);
      queue.push_back(std::move(f));
    }
  }
  out.reserve(seen.size());
  for (auto& [key, face] : seen) out.push_back(std::move(face));
  return out;
}

bool Polyhedron::subset_of(const Polyhedron& q) const {
  if (q.ambient_dim() != m_n) throw Error(Err::DimensionMismatch, "subset in different ambients");
  if (is_empty()) return true;
  if (q.is_empty()) return false;
  for (const RatVec& v : m_vertices)
    if (!q.contains(v)) return false;
  auto direction_ok = [&](const IntVec& d, bool both_signs) {
    for (const Constraint& c : q.m_equations)
      if (idot(d, c.normal) != 0) return false;
    for (const Constraint& c : q.m_facets) {
      Int s = idot(d, c.normal);
      if (s < 0 || (both_signs && s != 0)) return false;
    }
    return true;
  };
  for (const IntVec& r : m_rays)
    if (!direction_ok(r, false)) return false;
  for (const IntVec& l : m_lineality)
    if (!direction_ok(l, true)) return false;
  return true;
}

bool Polyhedron::is_face_of(const Polyhedron& q) const {
  if (is_empty() || q.is_empty()) return false;
  if (!subset_of(q)) return false;
  // Collect the constraints of q tight on all of this polyhedron; the face
  // they cut out must be exactly this polyhedron.
  std::vector<Constraint> ineqs;
  std::vector<Constraint> eqs = q.m_equations;
  for (const Constraint& c : q.m_facets) {
    bool tight = true;
    for (const RatVec& v : m_vertices)
      if (dot(v, c.normal) != c.offset) tight = false;
    for (const IntVec& r : m_rays)
      if (idot(r, c.normal) != 0) tight = false;
    for (const IntVec& l : m_lineality)
      if (idot(l, c.normal) != 0) tight = false;
    (tight ? eqs : ineqs).push_back(c);
  }
  return from_hrep(m_n, ineqs, eqs) == *this;
}

Polyhedron Polyhedron::intersection(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(Err::DimensionMismatch, "intersection in different ambients");
  if (a.is_empty() || b.is_empty()) {
    Polyhedron e;
    e.m_n = a.ambient_dim();
    return e;
  }
  std::vector<Constraint> ineqs = a.m_facets;
  ineqs.insert(ineqs.end(), b.m_facets.begin(), b.m_facets.end());
  std::vector<Constraint> eqs = a.m_equations;
  eqs.insert(eqs.end(), b.m_equations.begin(), b.m_equations.end());
  return from_hrep(a.ambient_dim(), ineqs, eqs);
}

bool Polyhedron::operator==(const Polyhedron& rhs) const {
  return m_n == rhs.m_n && m_vertices == rhs.m_vertices && m_rays == rhs.m_rays &&
         m_lineality == rhs.m_lineality && m_facets == rhs.m_facets &&
         m_equations == rhs.m_equations;
}

std::string Polyhedron::repr_key() const {
  std::ostringstream os;
  os << m_n << '|';
  auto put_rat_vec = [&](const RatVec& v) {
    for (const Rat& x : v) os << rat_to_string(x) << ',';
    os << ';';
  };
  auto put_int_vec = [&](const IntVec& v) {
    for (const Int& x : v) os << x.get_str() << ',';
    os << ';';
  };
  os << 'V';
  for (const RatVec& v : m_vertices) put_rat_vec(v);
  os << 'R';
  for (const IntVec& r : m_rays) put_int_vec(r);
  os << 'L';
  for (const IntVec& l : m_lineality) put_int_vec(l);
  return os.str();
}

Polyhedron recession_cone(const Polyhedron& p) {
  if (p.is_empty()) throw Error(Err::Internal, "recession cone of empty polyhedron");
  std::vector<Polyhedron::Constraint> ineqs, eqs;
  for (Polyhedron::Constraint c : p.facet_constraints()) {
    c.offset = 0;
    ineqs.push_back(std::move(c));
  }
  for (Polyhedron::Constraint c : p.equation_constraints()) {
    c.offset = 0;
    eqs.push_back(std::move(c));
  }
  return Polyhedron::from_hrep(p.ambient_dim(), ineqs, eqs);
}

}  // namespace trop
