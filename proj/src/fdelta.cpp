#include "rigged/fdelta.hpp"

#include <algorithm>

namespace rigged {

void ESSet::validate() const {
  loose.validate();
  for (auto& v : tight_vertices)
    if (!loose.has_cell(v) || loose.dim_of(v) != 0)
      throw std::runtime_error("tight vertex is not a vertex: " + v);
}

bool ESSet::tight_cell(const std::string& id) const {
  for (auto& v : loose.vertices_of_cell(id))
    if (!tight_vertices.count(v)) return false;
  return true;
}

ESSet chordate(SSet S) {
  ESSet out;
  out.loose = std::move(S);
  if (!out.loose.cells.empty())
    out.tight_vertices.insert(out.loose.cells[0].begin(), out.loose.cells[0].end());
  return out;
}

ESSet inchordate(SSet S) {
  ESSet out;
  out.loose = std::move(S);
  return out;
}

SubSSet tight_part(const ESSet& S) {
  std::set<std::string> keep;
  for (auto& lv : S.loose.cells)
    for (auto& id : lv)
      if (S.tight_cell(id)) keep.insert(id);
  return subcomplex(S.loose, keep);
}

bool emap_tight(const ESSet& S, const ESSet& T, const SMap& f) {
  /* direct reading: tight vertices land on tight vertices */
  bool direct = true;
  for (auto& v : S.tight_vertices)
    if (!T.tight_vertex(f.at(v).base)) direct = false;
  /* pullback reading: the restriction to the tight part factors through the
     target's tight part */
  SubSSet st = tight_part(S);
  bool factored = true;
  for (auto& lv : st.sset.cells)
    for (auto& id : lv) {
      const SimplexRef& r = f.at(id);
      if (!T.tight_cell(r.base)) factored = false;
    }
  if (direct != factored)
    throw std::runtime_error("tightness readings disagree; enhancement data corrupt");
  return direct;
}

EMap emap(const ESSet& S, const ESSet& T, SMap f) {
  EMap out;
  out.tight = emap_tight(S, T, f);
  out.map = std::move(f);
  return out;
}

void validate_emap(const ESSet& S, const ESSet& T, const EMap& f) {
  validate_smap(S.loose, T.loose, f.map);
  if (f.tight != emap_tight(S, T, f.map))
    throw std::runtime_error("tight flag inconsistent with data");
}

EMap ecompose(const ESSet& A, const ESSet& B, const ESSet& C, const EMap& g, const EMap& f) {
  (void)B;
  return emap(A, C, compose(B.loose, C.loose, g.map, f.map));
}

bool is_ffiov(const ESSet& S, const ESSet& T, const SMap& f) {
  if (!injective_on_vertices(S.loose, f)) return false;
  std::set<std::string> vimg;
  if (!S.loose.cells.empty())
    for (auto& v : S.loose.cells[0]) vimg.insert(f.at(v).base);
  for (int n = 0; n < std::max<int>(S.loose.cells.size(), T.loose.cells.size()); ++n) {
    std::set<std::string> img;
    for (size_t i = 0; i < S.loose.cell_count(n); ++i) {
      const SimplexRef& r = f.at(S.loose.cells[n][i]);
      if (!r.deg.empty()) return false;
      if (!img.insert(r.base).second) return false;
    }
    std::set<std::string> expected;
    for (size_t i = 0; i < T.loose.cell_count(n); ++i) {
      const std::string& id = T.loose.cells[n][i];
      bool inside = true;
      for (auto& v : T.loose.vertices_of_cell(id))
        if (!vimg.count(v)) inside = false;
      if (inside) expected.insert(id);
    }
    if (img != expected) return false;
  }
  return true;
}

Factorization factorize(const ESSet& S, const ESSet& T, const EMap& f) {
  std::set<std::string> vimg;
  if (!S.loose.cells.empty())
    for (auto& v : S.loose.cells[0]) vimg.insert(f.map.at(v).base);
  std::set<std::string> keep;
  for (auto& lv : T.loose.cells)
    for (auto& id : lv) {
      bool inside = true;
      for (auto& v : T.loose.vertices_of_cell(id))
        if (!vimg.count(v)) inside = false;
      if (inside) keep.insert(id);
    }
  Factorization out;
  SubSSet img = subcomplex(T.loose, keep);
  out.image.loose = img.sset;
  for (auto& v : T.tight_vertices)
    if (keep.count(v)) out.image.tight_vertices.insert(v);
  out.l = emap(S, out.image, f.map);   // values land in the full subcomplex
  out.r = emap(out.image, T, img.incl);
  return out;
}

std::optional<SMap> diagonal_filler(const SSet& X, const SSet& Y, const SSet& W, const SSet& Z,
                                    const SMap& l, const SMap& r,
                                    const SMap& top, const SMap& bot) {
  /* vertices: lift along the vertex-surjection l */
  std::map<std::string, std::string> vimage;   // vertex of Y -> vertex of W
  if (!X.cells.empty())
    for (auto& x : X.cells[0]) {
      const std::string y = l.at(x).base, w = top.at(x).base;
      auto it = vimage.find(y);
      if (it != vimage.end() && it->second != w) return std::nullopt;
      vimage[y] = w;
    }
  if (!Y.cells.empty())
    for (auto& y : Y.cells[0])
      if (!vimage.count(y)) return std::nullopt;
  /* cells: transport along the cell-bijection r */
  std::map<std::string, std::string> rinv;
  for (auto& lv : W.cells)
    for (auto& id : lv) {
      const SimplexRef& img = r.at(id);
      if (!img.deg.empty()) return std::nullopt;
      rinv[img.base] = id;
    }
  SMap d;
  for (auto& lv : Y.cells)
    for (auto& id : lv) {
      SimplexRef b = bot.at(id);
      auto it = rinv.find(b.base);
      if (it == rinv.end()) return std::nullopt;
      d.assignment[id] = {b.deg, it->second};
    }
  validate_smap(Y, W, d);
  if (!(compose(Y, W, d, l) == top)) return std::nullopt;
  if (!(compose(W, Z, r, d) == bot)) return std::nullopt;
  return d;
}

EHom ehom(const ESSet& S, const ESSet& T, int k) {
  EHom out;
  out.hom = truncated_hom(S.loose, T.loose, k);
  out.esset.loose = out.hom.hom;
  SubSSet st = tight_part(S);
  SubSSet tt = tight_part(T);
  if (!out.hom.hom.cells.empty())
    for (auto& v : out.hom.hom.cells[0]) {
      SMap vm = out.hom.vertex_map(S.loose, T.loose, v);
      /* direct reading */
      bool direct = true;
      for (auto& tv : S.tight_vertices)
        if (!T.tight_vertex(vm.at(tv).base)) direct = false;
      /* pullback reading: restriction to the tight part factors through the
         tight part of the target */
      bool factored = true;
      SMap restricted;
      for (auto& lv : st.sset.cells)
        for (auto& id : lv) {
          SimplexRef img = vm.at(id);
          if (!T.tight_cell(img.base)) {
            factored = false;
          } else {
            restricted.assignment[id] = img;
          }
        }
      if (factored && !st.sset.empty()) validate_smap(st.sset, tt.sset, restricted);
      if (direct != factored)
        throw std::runtime_error("ehom: tightness readings disagree");
      if (direct) out.esset.tight_vertices.insert(v);
    }
  return out;
}

EHom power_inchordate(const ESSet& T, const SSet& J, int k) {
  /* a map out of the all-tight marking is tight exactly when every vertex
     value is tight, which is what makes the evaluations jointly reflect */
  return ehom(chordate(J), T, k);
}

EProduct eproduct(const ESSet& A, const ESSet& B) {
  EProduct out;
  out.prod = product(A.loose, B.loose);
  out.esset.loose = out.prod.sset;
  if (!out.prod.sset.cells.empty())
    for (auto& v : out.prod.sset.cells[0]) {
      auto& pr = out.prod.parts.at(v);
      if (A.tight_vertex(pr.first.base) && B.tight_vertex(pr.second.base))
        out.esset.tight_vertices.insert(v);
    }
  out.proj1 = emap(out.esset, A, out.prod.proj1);
  out.proj2 = emap(out.esset, B, out.prod.proj2);
  return out;
}

EPullback epullback(const ESSet& X, const ESSet& Y, const ESSet& Z,
                    const EMap& f, const EMap& g) {
  EPullback out;
  out.pb = pullback(X.loose, Y.loose, Z.loose, f.map, g.map);
  out.esset.loose = out.pb.sset;
  if (!out.pb.sset.cells.empty())
    for (auto& v : out.pb.sset.cells[0]) {
      auto& pr = out.pb.parts.at(v);
      if (X.tight_vertex(pr.first.base) && Y.tight_vertex(pr.second.base))
        out.esset.tight_vertices.insert(v);
    }
  out.proj1 = emap(out.esset, X, out.pb.proj1);
  out.proj2 = emap(out.esset, Y, out.pb.proj2);
  return out;
}

ESSet eopposite(const ESSet& S) {
  ESSet out;
  out.loose = opposite(S.loose);
  out.tight_vertices = S.tight_vertices;
  return out;
}

EMap eopposite_emap(const ESSet& S, const ESSet& T, const EMap& f) {
  return emap(eopposite(S), eopposite(T), opposite_smap(S.loose, f.map, T.loose));
}

SSet random_sset(uint64_t seed, int n_vertices, int n_edges, int n_triangles) {
  uint64_t rng = seed * 0x9e3779b97f4a7c15ull + 1;
  SSet S;
  if (n_vertices <= 0) return S;
  for (int i = 0; i < n_vertices; ++i) S.add_cell(0, "v" + std::to_string(i));
  auto vtx = [&](uint64_t r) { return "v" + std::to_string(r % n_vertices); };
  int edges = 0;
  for (int i = 0; i < n_edges; ++i) {
    std::string a = vtx(splitmix64(rng)), b = vtx(splitmix64(rng));
    std::string id = "e" + std::to_string(edges++);
    S.add_cell(1, id);
    S.set_faces(id, {{{}, b}, {{}, a}});   // edge a -> b
  }
  /* edge refs usable as triangle faces: nondegenerate edges plus identities */
  auto edge_refs = [&]() {
    std::vector<SimplexRef> out;
    if (S.cells.size() > 1)
      for (auto& e : S.cells[1]) out.push_back({{}, e});
    for (auto& v : S.cells[0]) out.push_back({{0}, v});
    return out;
  };
  auto src = [&](const SimplexRef& r) {
    return r.deg.empty() ? S.faces.at(r.base)[1].base : r.base;
  };
  auto dst = [&](const SimplexRef& r) {
    return r.deg.empty() ? S.faces.at(r.base)[0].base : r.base;
  };
  int tris = 0;
  for (int i = 0; i < n_triangles; ++i) {
    auto refs = edge_refs();
    SimplexRef e2 = refs[splitmix64(rng) % refs.size()];
    std::vector<SimplexRef> mids;
    for (auto& r : refs)
      if (src(r) == dst(e2)) mids.push_back(r);
    if (mids.empty()) continue;
    SimplexRef e0 = mids[splitmix64(rng) % mids.size()];
    std::vector<SimplexRef> longs;
    for (auto& r : refs)
      if (src(r) == src(e2) && dst(r) == dst(e0)) longs.push_back(r);
    SimplexRef e1;
    if (longs.empty()) {
      std::string id = "e" + std::to_string(edges++);
      S.add_cell(1, id);
      S.set_faces(id, {{{}, dst(e0)}, {{}, src(e2)}});
      e1 = {{}, id};
    } else {
      e1 = longs[splitmix64(rng) % longs.size()];
    }
    std::string id = "t" + std::to_string(tris++);
    S.add_cell(2, id);
    S.set_faces(id, {e0, e1, e2});
  }
  S.sort_cells();
  S.validate();
  return S;
}

ESSet random_esset(uint64_t seed, int n_vertices, int n_edges, int n_triangles) {
  ESSet out;
  out.loose = random_sset(seed, n_vertices, n_edges, n_triangles);
  uint64_t rng = seed ^ 0xabcdef1234567890ull;
  if (!out.loose.cells.empty())
    for (auto& v : out.loose.cells[0])
      if (splitmix64(rng) % 2) out.tight_vertices.insert(v);
  return out;
}

}  // namespace rigged
