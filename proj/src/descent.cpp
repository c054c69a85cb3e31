#include "trop/descent.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trop/error.hpp"

namespace trop {

namespace {

// Shared structural gate for the object-level operations. Count and base
// problems get the caller's code (validation distinguishes them from the
// skeleton-mismatch of a hom query); size problems are always
// DimensionMismatch.
void check_shape(const SkeletonGamma& g, const DescentObject& obj, Err count_err, Err base_err) {
  if (obj.vertex_objects.size() != g.vertex_count() || obj.edge_glue.size() != g.edge_count())
    throw Error(count_err, "object does not match the skeleton shape");
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const TropConnection& xi = obj.vertex_objects[v];
    if (xi.rank != obj.rank)
      throw Error(Err::DimensionMismatch, "vertex connection rank differs from the object rank");
    if (!same_setup(xi.base, g.vertex_setup(v)))
      throw Error(base_err, "vertex connection does not live over the vertex star");
  }
  for (const Mat& glue : obj.edge_glue)
    if (glue.rows() != obj.rank || glue.cols() != obj.rank)
      throw Error(Err::DimensionMismatch, "edge gluing matrix has the wrong shape");
}

Mat require_inverse(const Mat& m) {
  std::optional<Mat> inv = inverse(m);
  if (!inv) throw Error(Err::BadBasis, "edge gluing matrix is singular");
  return *inv;
}

// Evaluation of an edge-star 1-form basis class on an ambient direction.
// The open star of an edge has the edge as its only minimal member, so the
// class representative is a single ambient covector block at offset zero.
Rat eval_class_on(const FormSpace& forms, std::size_t t, const RatVec& direction) {
  const RatVec rep = forms.basis().row(t);
  Rat value = 0;
  for (std::size_t j = 0; j < direction.size(); ++j) value += rep[j] * direction[j];
  return value;
}

// Primitive integer direction of a skeleton edge, oriented out of the given
// base vertex (one of its endpoints).
RatVec outgoing_direction(const SkeletonGamma& g, const SkeletonEdge& e, std::size_t base_vertex) {
  const Polyhedron& segment = g.host().face(e.face);
  const RatVec& base_point = g.host().face(g.vertex_face(base_vertex)).vertices().front();
  const std::vector<RatVec>& ends = segment.vertices();
  const RatVec& other = (ends.front() == base_point) ? ends.back() : ends.front();
  RatVec diff(other.size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = other[j] - base_point[j];
  return to_rat_vec(primitive_of_rational(diff));
}

}  // namespace

SkeletonGamma build_skeleton(const PolyComplex& sigma) {
  for (std::size_t i = 0; i < sigma.face_count(); ++i)
    if (sigma.face(i).has_lineality())
      throw Error(Err::ContainsLine, "a face of the complex contains a line");

  SkeletonGamma g;
  g.m_host = sigma;
  const PolyComplex& host = g.m_host;

  std::map<std::size_t, std::size_t> vertex_of_face;
  for (std::size_t i = 0; i < host.face_count(); ++i) {
    if (host.face_dim(i) != 0) continue;
    vertex_of_face.emplace(i, g.m_vertex_faces.size());
    g.m_vertex_faces.push_back(i);
  }
  if (g.m_vertex_faces.empty())
    throw Error(Err::Disconnected, "the complex has no bounded vertices");

  std::map<std::size_t, std::size_t> edge_of_face;
  for (std::size_t i = 0; i < host.face_count(); ++i) {
    if (host.face_dim(i) != 1 || !host.face(i).is_bounded()) continue;
    std::vector<std::size_t> ends;
    for (const auto& [face, vertex] : vertex_of_face)
      if (host.is_subface(face, i)) ends.push_back(vertex);
    if (ends.size() != 2)
      throw Error(Err::NotSimplicial, "a bounded segment does not have two distinct endpoints");
    edge_of_face.emplace(i, g.m_edges.size());
    g.m_edges.push_back(
        SkeletonEdge{i, std::min(ends[0], ends[1]), std::max(ends[0], ends[1])});
  }

  for (std::size_t i = 0; i < host.face_count(); ++i) {
    if (host.face_dim(i) != 2 || !host.face(i).is_bounded()) continue;
    if (host.face(i).vertices().size() != 3)
      throw Error(Err::NotSimplicial, "a bounded 2-face is not a triangle");
    std::vector<std::size_t> corners;
    for (const auto& [face, vertex] : vertex_of_face)
      if (host.is_subface(face, i)) corners.push_back(vertex);
    std::vector<std::size_t> sides;
    for (const auto& [face, edge] : edge_of_face)
      if (host.is_subface(face, i)) sides.push_back(edge);
    if (corners.size() != 3 || sides.size() != 3)
      throw Error(Err::NotSimplicial, "a bounded triangle is missing boundary faces");
    std::sort(corners.begin(), corners.end());
    SkeletonTriangle tri{i, corners[0], corners[1], corners[2], 0, 0, 0};
    for (std::size_t side : sides) {
      const SkeletonEdge& e = g.m_edges[side];
      if (e.tail == tri.a && e.head == tri.b) tri.ab = side;
      else if (e.tail == tri.b && e.head == tri.c) tri.bc = side;
      else if (e.tail == tri.a && e.head == tri.c) tri.ac = side;
      else throw Error(Err::NotSimplicial, "triangle edges do not match its vertices");
    }
    g.m_triangles.push_back(tri);
  }

  g.m_incident.assign(g.m_vertex_faces.size(), {});
  for (std::size_t e = 0; e < g.m_edges.size(); ++e) {
    g.m_incident[g.m_edges[e].tail].push_back(e);
    g.m_incident[g.m_edges[e].head].push_back(e);
  }

  std::vector<bool> reached(g.m_vertex_faces.size(), false);
  std::deque<std::size_t> queue{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    for (std::size_t e : g.m_incident[at]) {
      const SkeletonEdge& edge = g.m_edges[e];
      const std::size_t next = (edge.tail == at) ? edge.head : edge.tail;
      if (reached[next]) continue;
      reached[next] = true;
      ++count;
      queue.push_back(next);
    }
  }
  if (count != g.m_vertex_faces.size())
    throw Error(Err::Disconnected, "the bounded edge graph is disconnected");

  for (std::size_t face : g.m_vertex_faces) {
    OpenSet star = host.open_star(face);
    g.m_vertex_setups.push_back(make_bar_setup(host, star));
    g.m_vertex_stars.push_back(std::move(star));
  }
  for (const SkeletonEdge& e : g.m_edges) {
    OpenSet star = host.open_star(e.face);
    g.m_from_tail.push_back(restrict_forms(host, g.m_vertex_stars[e.tail], star, 1));
    g.m_from_head.push_back(restrict_forms(host, g.m_vertex_stars[e.head], star, 1));
    g.m_edge_forms.push_back(one_forms(host, star));
  }
  return g;
}

DescentObject trivial_object(const SkeletonGamma& g, std::size_t rank) {
  DescentObject obj;
  obj.rank = rank;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    obj.vertex_objects.push_back(trivial_connection(g.vertex_setup(v), rank));
  obj.edge_glue.assign(g.edge_count(), Mat::identity(rank));
  return obj;
}

std::vector<Mat> edge_theta(const SkeletonGamma& g, const DescentObject& obj, std::size_t e,
                            bool from_head) {
  const SkeletonEdge& edge = g.edge(e);
  const std::size_t v = from_head ? edge.head : edge.tail;
  const Mat& restriction = from_head ? g.restriction_from_head(e) : g.restriction_from_tail(e);
  const TropConnection& xi = obj.vertex_objects.at(v);
  std::vector<Mat> out(restriction.rows(), Mat(obj.rank, obj.rank));
  for (std::size_t t = 0; t < restriction.rows(); ++t)
    for (std::size_t k = 0; k < restriction.cols(); ++k) {
      const Rat& weight = restriction.at(t, k);
      if (weight != 0) out[t] = out[t] + xi.theta[k].scaled(weight);
    }
  return out;
}

DescentReport validate_object(const SkeletonGamma& g, const DescentObject& obj) {
  check_shape(g, obj, Err::DimensionMismatch, Err::BaseMismatch);
  DescentReport report;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_integrable(obj.vertex_objects[v]).integrable)
      report.violations.push_back(
          {DescentCheck::VertexIntegrable, v, "theta ^ theta is nonzero on the vertex star"});
    if (!is_unipotent(obj.vertex_objects[v]).unipotent)
      report.violations.push_back(
          {DescentCheck::VertexUnipotent, v, "the vertex connection is not unipotent"});
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Mat& glue = obj.edge_glue[e];
    if (rank_of(glue) != obj.rank) {
      report.violations.push_back({DescentCheck::EdgeInvertible, e, "gluing matrix is singular"});
      continue;
    }
    const std::vector<Mat> from_tail = edge_theta(g, obj, e, false);
    const std::vector<Mat> from_head = edge_theta(g, obj, e, true);
    for (std::size_t t = 0; t < from_tail.size(); ++t)
      if (!(glue * from_tail[t] == from_head[t] * glue)) {
        report.violations.push_back({DescentCheck::EdgeIntertwining, e,
                                     "restricted 1-form class " + std::to_string(t)});
        break;
      }
  }
  for (std::size_t f = 0; f < g.triangle_count(); ++f) {
    const SkeletonTriangle& tri = g.triangle(f);
    if (!(obj.edge_glue[tri.ac] == obj.edge_glue[tri.bc] * obj.edge_glue[tri.ab]))
      report.violations.push_back(
          {DescentCheck::FaceCocycle, f, "gluings around the triangle do not close"});
  }
  report.valid = report.violations.empty();
  return report;
}

DescentHom descent_hom(const SkeletonGamma& g, const DescentObject& from,
                       const DescentObject& to) {
  check_shape(g, from, Err::SkeletonMismatch, Err::SkeletonMismatch);
  check_shape(g, to, Err::SkeletonMismatch, Err::SkeletonMismatch);
  const std::size_t ra = from.rank;
  const std::size_t rb = to.rank;
  const std::size_t cell = ra * rb;  // unknowns per vertex: vec of the part there
  const std::size_t width = g.vertex_count() * cell;
  Mat system(0, width);
  auto place = [&](const Mat& block, std::size_t vertex, std::size_t row_base, Mat& rows) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        rows.at(row_base + i, vertex * cell + j) = rows.at(row_base + i, vertex * cell + j) +
                                                   block.at(i, j);
  };
  // Horizontality at each vertex: B_k psi - psi A_k = 0 in row-major
  // vectorization, one block of rows per 1-form class.
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const std::vector<Mat>& a = from.vertex_objects[v].theta;
    const std::vector<Mat>& b = to.vertex_objects[v].theta;
    for (std::size_t k = 0; k < a.size(); ++k) {
      Mat block = b[k].kronecker(Mat::identity(ra)) -
                  Mat::identity(rb).kronecker(a[k].transposed());
      Mat rows(cell, width);
      place(block, v, 0, rows);
      system = system.vstack(rows);
    }
  }
  // Commuting square at each edge: psi_head phi - phi' psi_tail = 0.
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const SkeletonEdge& edge = g.edge(e);
    Mat rows(cell, width);
    place(Mat::identity(rb).kronecker(from.edge_glue[e].transposed()), edge.head, 0, rows);
    place(to.edge_glue[e].kronecker(Mat::identity(ra)).scaled(Rat(-1)), edge.tail, 0, rows);
    system = system.vstack(rows);
  }
  DescentHom hom;
  hom.rank_from = ra;
  hom.rank_to = rb;
  hom.solutions = kernel(system);
  for (std::size_t s = 0; s < hom.solutions.dim(); ++s) {
    const RatVec row = hom.solutions.basis().row(s);
    DescentMorphism morphism;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      Mat part(rb, ra);
      for (std::size_t i = 0; i < rb; ++i)
        for (std::size_t j = 0; j < ra; ++j) part.at(i, j) = row[v * cell + i * ra + j];
      morphism.parts.push_back(std::move(part));
    }
    hom.basis.push_back(std::move(morphism));
  }
  return hom;
}

ObjectUnipotenceReport is_unipotent_object(const SkeletonGamma& g, const DescentObject& obj) {
  check_shape(g, obj, Err::SkeletonMismatch, Err::SkeletonMismatch);
  const std::size_t nv = g.vertex_count();
  ObjectUnipotenceReport report;
  std::vector<Mat> embed(nv, Mat::identity(obj.rank));
  std::vector<Subspace> stage(nv, Subspace::zero(obj.rank));
  const DescentObject unit = trivial_object(g, 1);
  DescentObject current = obj;
  while (current.rank > 0) {
    const DescentHom sections = descent_hom(g, unit, current);
    const std::size_t d = sections.dim();
    if (d == 0) return report;  // stuck strictly below the full fiber
    const std::size_t r = current.rank;
    std::vector<Mat> section_rows(nv, Mat(0, r));
    for (std::size_t s = 0; s < d; ++s) {
      const RatVec row = sections.solutions.basis().row(s);
      for (std::size_t v = 0; v < nv; ++v)
        section_rows[v].append_row(RatVec(row.begin() + static_cast<long>(v * r),
                                          row.begin() + static_cast<long>((v + 1) * r)));
    }
    std::vector<Subspace> span(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      span[v] = Subspace::span_of(section_rows[v]);
      if (span[v].dim() != d)
        throw Error(Err::Internal, "global sections are dependent at a vertex");
      stage[v] = sum(stage[v], Subspace::span_of(section_rows[v] * embed[v].transposed()));
    }
    report.chain.push_back(stage);
    if (d == r) break;  // the quotient vanishes
    // Complement of the section span: canonical at vertex 0, transported
    // along a breadth-first spanning tree so tree gluings quotient to the
    // identity.
    std::vector<Mat> comp(nv);
    comp[0] = QuotientSpace(Subspace::full(r), span[0]).section_basis().transposed();
    std::vector<bool> have(nv, false);
    have[0] = true;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      const std::size_t at = queue.front();
      queue.pop_front();
      for (std::size_t e : g.edges_at(at)) {
        const SkeletonEdge& edge = g.edge(e);
        const std::size_t next = (edge.tail == at) ? edge.head : edge.tail;
        if (have[next]) continue;
        comp[next] = (edge.tail == at) ? current.edge_glue[e] * comp[at]
                                       : require_inverse(current.edge_glue[e]) * comp[at];
        have[next] = true;
        queue.push_back(next);
      }
    }
    DescentObject next;
    next.rank = r - d;
    std::vector<Mat> projections;
    for (std::size_t v = 0; v < nv; ++v) {
      std::optional<Mat> change = inverse(span[v].basis().transposed().hstack(comp[v]));
      if (!change)
        throw Error(Err::Internal, "transported complement fails to complement the sections");
      Mat projection(r - d, r);
      for (std::size_t i = 0; i < r - d; ++i)
        for (std::size_t j = 0; j < r; ++j) projection.at(i, j) = change->at(d + i, j);
      std::vector<Mat> theta;
      for (const Mat& a : current.vertex_objects[v].theta)
        theta.push_back(projection * a * comp[v]);
      next.vertex_objects.push_back(
          make_connection(g.vertex_setup(v), r - d, std::move(theta)));
      embed[v] = embed[v] * comp[v];
      projections.push_back(std::move(projection));
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const SkeletonEdge& edge = g.edge(e);
      next.edge_glue.push_back(projections[edge.head] * current.edge_glue[e] * comp[edge.tail]);
    }
    current = std::move(next);
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (stage[v].dim() != obj.rank)
      throw Error(Err::Internal, "completed peel does not fill the fiber");
  report.unipotent = true;
  return report;
}

std::vector<std::size_t> cycle_edges(const SkeletonGamma& g, std::size_t base_vertex) {
  const std::size_t nv = g.vertex_count();
  if (base_vertex >= nv) throw Error(Err::DimensionMismatch, "base vertex out of range");
  if (g.triangle_count() != 0 || g.edge_count() != nv)
    throw Error(Err::NotCycle, "skeleton is not a single cycle");
  for (std::size_t v = 0; v < nv; ++v)
    if (g.edges_at(v).size() != 2)
      throw Error(Err::NotCycle, "skeleton has a vertex of degree other than two");
  std::vector<std::size_t> walk;
  std::size_t at = base_vertex;
  std::size_t use = g.edges_at(at).front();
  for (std::size_t step = 0; step < nv; ++step) {
    walk.push_back(use);
    const SkeletonEdge& edge = g.edge(use);
    at = (edge.tail == at) ? edge.head : edge.tail;
    const std::vector<std::size_t>& incident = g.edges_at(at);
    use = (incident.front() == use) ? incident.back() : incident.front();
  }
  if (at != base_vertex) throw Error(Err::NotCycle, "walk around the skeleton does not close");
  return walk;
}

EllipticPair elliptic_extract(const SkeletonGamma& g, const DescentObject& obj,
                              std::size_t base_vertex) {
  check_shape(g, obj, Err::SkeletonMismatch, Err::SkeletonMismatch);
  const std::vector<std::size_t> walk = cycle_edges(g, base_vertex);
  Mat monodromy = Mat::identity(obj.rank);
  std::size_t at = base_vertex;
  for (std::size_t e : walk) {
    const SkeletonEdge& edge = g.edge(e);
    if (edge.tail == at) {
      if (rank_of(obj.edge_glue[e]) != obj.rank)
        throw Error(Err::BadBasis, "edge gluing matrix is singular");
      monodromy = obj.edge_glue[e] * monodromy;
      at = edge.head;
    } else {
      monodromy = require_inverse(obj.edge_glue[e]) * monodromy;
      at = edge.tail;
    }
  }
  const std::size_t first = walk.front();
  const SkeletonEdge& out_edge = g.edge(first);
  const RatVec direction = outgoing_direction(g, out_edge, base_vertex);
  const std::vector<Mat> restricted = edge_theta(g, obj, first, out_edge.head == base_vertex);
  Mat residue(obj.rank, obj.rank);
  for (std::size_t t = 0; t < restricted.size(); ++t) {
    const Rat weight = eval_class_on(g.edge_forms(first), t, direction);
    if (weight != 0) residue = residue + restricted[t].scaled(weight);
  }
  if (!(residue * monodromy == monodromy * residue))
    throw Error(Err::NotCommuting, "residue and monodromy do not commute");
  return EllipticPair{std::move(residue), std::move(monodromy)};
}

DescentObject elliptic_build(const SkeletonGamma& g, const Mat& residue, const Mat& monodromy,
                             std::size_t base_vertex) {
  const std::size_t r = residue.rows();
  if (residue.cols() != r || monodromy.rows() != r || monodromy.cols() != r)
    throw Error(Err::DimensionMismatch, "residue and monodromy must be square of equal size");
  if (rank_of(monodromy) != r) throw Error(Err::BadBasis, "monodromy must be invertible");
  const std::vector<std::size_t> walk = cycle_edges(g, base_vertex);
  const PolyComplex& host = g.host();
  const OpenSet whole = host.whole_open();
  const FormSpace global = one_forms(host, whole);
  if (global.dim() != 1)
    throw Error(Err::NotCycle, "host does not carry a one-dimensional global 1-form space");
  // Normalize the global form so it induces the lattice coordinate of the
  // outgoing walk edge at the base vertex.
  const std::size_t first = walk.front();
  const RatVec direction = outgoing_direction(g, g.edge(first), base_vertex);
  const Mat to_edge = restrict_forms(host, whole, g.edge_forms(first).open(), 1);
  Rat scale = 0;
  for (std::size_t t = 0; t < to_edge.rows(); ++t)
    scale += eval_class_on(g.edge_forms(first), t, direction) * to_edge.at(t, 0);
  if (scale == 0)
    throw Error(Err::NotCycle, "the global 1-form vanishes on the base edge");
  DescentObject obj;
  obj.rank = r;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const Mat to_vertex = restrict_forms(host, whole, g.vertex_star(v), 1);
    std::vector<Mat> theta;
    for (std::size_t k = 0; k < to_vertex.rows(); ++k)
      theta.push_back(residue.scaled(to_vertex.at(k, 0) / scale));
    obj.vertex_objects.push_back(make_connection(g.vertex_setup(v), r, std::move(theta)));
  }
  obj.edge_glue.assign(g.edge_count(), Mat::identity(r));
  // The walk's closing edge enters the base vertex and carries the monodromy
  // (in its stored tail -> head direction).
  const std::size_t closing = walk.back();
  obj.edge_glue[closing] =
      (g.edge(closing).head == base_vertex) ? monodromy : *inverse(monodromy);
  return obj;
}

}  // namespace trop
