#include "rigged/sset.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace rigged {

std::string refstr(const SimplexRef& r) {
  if (r.deg.empty()) return r.base;
  std::ostringstream os;
  for (int i : r.deg) os << 's' << i;
  os << '.' << r.base;
  return os.str();
}

std::vector<int> word_insert(std::vector<int> w, int i) {
  std::vector<int> out;
  size_t j = 0;
  while (j < w.size() && i <= w[j]) out.push_back(w[j++] + 1);
  out.push_back(i);
  while (j < w.size()) out.push_back(w[j++]);
  return out;
}

static std::vector<int> word_strip(const std::vector<int>& w, int i) {
  std::vector<int> out;
  bool seen = false;
  for (int e : w) {
    if (e == i && !seen) { seen = true; continue; }
    out.push_back(e > i ? e - 1 : e);
  }
  if (!seen) throw std::runtime_error("word_strip: index not present");
  return out;
}

SimplexRef deg_vertex_ref(const std::string& v, int n) {
  SimplexRef r{{}, v};
  for (int i = n - 1; i >= 0; --i) r.deg.push_back(i);
  return r;
}

void SSet::add_cell(int n, const std::string& id) {
  if (n < 0) throw std::runtime_error("add_cell: negative dimension");
  if (dims.count(id)) throw std::runtime_error("add_cell: duplicate id " + id);
  if ((int)cells.size() <= n) cells.resize(n + 1);
  cells[n].push_back(id);
  dims[id] = n;
  top_dim = std::max(top_dim, n);
}

void SSet::set_faces(const std::string& id, std::vector<SimplexRef> fs) {
  int n = dim_of(id);
  if ((int)fs.size() != n + 1) throw std::runtime_error("set_faces: arity mismatch for " + id);
  faces[id] = std::move(fs);
}

void SSet::sort_cells() {
  for (auto& lv : cells) std::sort(lv.begin(), lv.end());
}

int SSet::dim_of(const std::string& id) const {
  auto it = dims.find(id);
  if (it == dims.end()) throw std::runtime_error("unknown cell " + id);
  return it->second;
}

size_t SSet::total_cells() const {
  size_t t = 0;
  for (auto& lv : cells) t += lv.size();
  return t;
}

bool SSet::ref_valid(const SimplexRef& r) const {
  if (!has_cell(r.base)) return false;
  int d = dim_of(r.base), p = (int)r.deg.size();
  for (int j = 0; j < p; ++j) {
    if (r.deg[j] < 0 || r.deg[j] > d + p - 1 - j) return false;
    if (j + 1 < p && r.deg[j] <= r.deg[j + 1]) return false;
  }
  return true;
}

SimplexRef SSet::face(const SimplexRef& r, int i) const {
  int n = ref_dim(r);
  if (n < 1 || i < 0 || i > n) throw std::runtime_error("face: bad index");
  std::vector<int> out;
  int fi = i;
  size_t j = 0;
  for (; j < r.deg.size(); ++j) {
    int e = r.deg[j];
    if (fi < e) {
      out.push_back(e - 1);
    } else if (fi == e || fi == e + 1) {
      SimplexRef res{out, r.base};
      for (++j; j < r.deg.size(); ++j) res.deg.push_back(r.deg[j]);
      return res;
    } else {
      out.push_back(e);
      --fi;
    }
  }
  SimplexRef res = faces.at(r.base)[fi];
  for (auto it = out.rbegin(); it != out.rend(); ++it) res.deg = word_insert(res.deg, *it);
  return res;
}

SimplexRef SSet::vertex(const SimplexRef& r, int j) const {
  SimplexRef v = r;
  for (int t = 0; t < j; ++t) v = face(v, 0);
  while (ref_dim(v) > 0) v = face(v, 1);
  return v;
}

std::vector<std::string> SSet::vertices_of(const SimplexRef& r) const {
  std::vector<std::string> out;
  int n = ref_dim(r);
  for (int j = 0; j <= n; ++j) out.push_back(vertex(r, j).base);
  return out;
}

std::vector<std::string> SSet::vertices_of_cell(const std::string& id) const {
  return vertices_of(SimplexRef{{}, id});
}

static void gen_words(int d, int p, int pos, int maxv, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (pos == p) {
    out.push_back(cur);
    return;
  }
  int hi = std::min(maxv, d + p - 1 - pos);
  for (int v = hi; v >= 0; --v) {
    cur.push_back(v);
    gen_words(d, p, pos + 1, v - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<SimplexRef> SSet::all_refs(int n) const {
  std::vector<SimplexRef> out;
  for (int d = std::min(n, top_dim); d >= 0; --d) {
    if (d >= (int)cells.size()) continue;
    std::vector<std::vector<int>> words;
    std::vector<int> cur;
    gen_words(d, n - d, 0, n - 1, cur, words);
    for (const auto& id : cells[d])
      for (auto& w : words) out.push_back({w, id});
  }
  std::sort(out.begin(), out.end());
  return out;
}

void SSet::validate() const {
  for (int n = 0; n < (int)cells.size(); ++n) {
    for (auto& id : cells[n]) {
      if (dim_of(id) != n) throw std::runtime_error("dim table broken at " + id);
      if (n == 0) continue;
      auto it = faces.find(id);
      if (it == faces.end()) throw std::runtime_error("missing faces for " + id);
      if ((int)it->second.size() != n + 1) throw std::runtime_error("face arity broken at " + id);
      for (auto& f : it->second) {
        if (!ref_valid(f) || ref_dim(f) != n - 1)
          throw std::runtime_error("bad face ref on " + id);
      }
    }
  }
  for (auto& [id, fs] : faces) {
    (void)fs;
    int n = dim_of(id);
    if (n < 2) continue;
    SimplexRef c{{}, id};
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (face(face(c, j), i) != face(face(c, i), j - 1))
          throw std::runtime_error("simplicial identity fails at " + id);
  }
}

const SimplexRef& SMap::at(const std::string& id) const {
  auto it = assignment.find(id);
  if (it == assignment.end()) throw std::runtime_error("map undefined on " + id);
  return it->second;
}

SimplexRef SMap::apply(const SSet&, const SimplexRef& r) const {
  SimplexRef out = at(r.base);
  for (auto it = r.deg.rbegin(); it != r.deg.rend(); ++it) out.deg = word_insert(out.deg, *it);
  return out;
}

std::string serialize(const SMap& f) {
  std::ostringstream os;
  for (auto& [c, r] : f.assignment) os << c << "->" << refstr(r) << ';';
  return os.str();
}

void validate_smap(const SSet& S, const SSet& T, const SMap& f) {
  for (int n = 0; n < (int)S.cells.size(); ++n) {
    for (auto& id : S.cells[n]) {
      const SimplexRef& r = f.at(id);
      if (!T.ref_valid(r) || T.ref_dim(r) != n)
        throw std::runtime_error("map value invalid at " + id);
      if (n == 0) continue;
      for (int i = 0; i <= n; ++i) {
        SimplexRef lhs = T.face(r, i);
        SimplexRef rhs = f.apply(T, S.faces.at(id)[i]);
        if (lhs != rhs) throw std::runtime_error("map not simplicial at " + id);
      }
    }
  }
}

SMap id_map(const SSet& S) {
  SMap f;
  for (auto& lv : S.cells)
    for (auto& id : lv) f.assignment[id] = {{}, id};
  return f;
}

SMap compose(const SSet&, const SSet& tgt, const SMap& g, const SMap& f) {
  SMap out;
  for (auto& [c, r] : f.assignment) out.assignment[c] = g.apply(tgt, r);
  return out;
}

bool surjective_on_vertices(const SSet& S, const SSet& T, const SMap& f) {
  std::set<std::string> hit;
  if (!S.cells.empty())
    for (auto& v : S.cells[0]) hit.insert(f.at(v).base);
  return T.cells.empty() || hit.size() == T.cells[0].size();
}

bool injective_on_vertices(const SSet& S, const SMap& f) {
  std::set<std::string> hit;
  if (S.cells.empty()) return true;
  for (auto& v : S.cells[0])
    if (!hit.insert(f.at(v).base).second) return false;
  return true;
}

std::string chain_id(const std::vector<int>& ch) {
  std::ostringstream os;
  for (size_t i = 0; i < ch.size(); ++i) {
    if (i) os << '.';
    os << ch[i];
  }
  return os.str();
}

std::vector<int> parse_chain(const std::string& id) {
  std::vector<int> out;
  std::istringstream is(id);
  std::string part;
  while (std::getline(is, part, '.')) out.push_back(std::stoi(part));
  return out;
}

SSet std_simplex(int n) {
  if (n < 0) throw std::runtime_error("std_simplex: negative n");
  SSet S;
  std::vector<std::vector<int>> chains;
  for (int m = 1; m < (1 << (n + 1)); ++m) {
    std::vector<int> ch;
    for (int v = 0; v <= n; ++v)
      if (m & (1 << v)) ch.push_back(v);
    chains.push_back(ch);
  }
  for (auto& ch : chains) S.add_cell((int)ch.size() - 1, chain_id(ch));
  for (auto& ch : chains) {
    if (ch.size() < 2) continue;
    std::vector<SimplexRef> fs;
    for (size_t i = 0; i < ch.size(); ++i) {
      std::vector<int> sub = ch;
      sub.erase(sub.begin() + i);
      fs.push_back({{}, chain_id(sub)});
    }
    S.set_faces(chain_id(ch), std::move(fs));
  }
  S.sort_cells();
  return S;
}

SubSSet subcomplex(const SSet& S, const std::set<std::string>& keep) {
  SubSSet out;
  for (int n = 0; n < (int)S.cells.size(); ++n) {
    for (auto& id : S.cells[n]) {
      if (!keep.count(id)) continue;
      out.sset.add_cell(n, id);
      if (n >= 1) {
        for (auto& f : S.faces.at(id))
          if (!keep.count(f.base))
            throw std::runtime_error("subcomplex: not face-closed at " + id);
        out.sset.set_faces(id, S.faces.at(id));
      }
      out.incl.assignment[id] = {{}, id};
    }
  }
  out.sset.sort_cells();
  return out;
}

SSet truncate(const SSet& S, int k) {
  SSet out;
  for (int n = 0; n < (int)S.cells.size() && n <= k; ++n)
    for (auto& id : S.cells[n]) {
      out.add_cell(n, id);
      if (n >= 1) out.set_faces(id, S.faces.at(id));
    }
  out.sort_cells();
  return out;
}

SubSSet boundary(int n) {
  if (n == 0) return SubSSet{};
  SSet D = std_simplex(n);
  std::set<std::string> keep;
  for (auto& lv : D.cells)
    for (auto& id : lv) keep.insert(id);
  std::vector<int> top;
  for (int v = 0; v <= n; ++v) top.push_back(v);
  keep.erase(chain_id(top));
  return subcomplex(D, keep);
}

SubSSet horn(int n, int j) {
  if (n < 1 || j < 0 || j > n) throw std::runtime_error("horn: bad indices");
  SSet D = std_simplex(n);
  std::set<std::string> keep;
  for (auto& lv : D.cells)
    for (auto& id : lv) keep.insert(id);
  std::vector<int> top;
  for (int v = 0; v <= n; ++v) top.push_back(v);
  keep.erase(chain_id(top));
  std::vector<int> opp = top;
  opp.erase(opp.begin() + j);
  keep.erase(chain_id(opp));
  return subcomplex(D, keep);
}

SMap simplex_map(const std::vector<int>& alpha, int n) {
  int m = (int)alpha.size() - 1;
  for (int i = 0; i < m; ++i)
    if (alpha[i] > alpha[i + 1]) throw std::runtime_error("simplex_map: not monotone");
  if (alpha.empty() || alpha.back() > n || alpha.front() < 0)
    throw std::runtime_error("simplex_map: out of range");
  SMap f;
  for (int mask = 1; mask < (1 << (m + 1)); ++mask) {
    std::vector<int> ch;
    for (int v = 0; v <= m; ++v)
      if (mask & (1 << v)) ch.push_back(v);
    std::vector<int> vals;
    for (int v : ch) vals.push_back(alpha[v]);
    std::vector<int> support;
    std::vector<int> reps;
    for (size_t i = 0; i < vals.size(); ++i) {
      if (i + 1 < vals.size() && vals[i] == vals[i + 1]) reps.push_back((int)i);
      if (i == 0 || vals[i] != vals[i - 1]) support.push_back(vals[i]);
    }
    std::sort(reps.rbegin(), reps.rend());
    f.assignment[chain_id(ch)] = {reps, chain_id(support)};
  }
  return f;
}

PairNF normalize_pair(SimplexRef u, SimplexRef v) {
  std::vector<int> common;
  for (int e : u.deg)
    if (std::find(v.deg.begin(), v.deg.end(), e) != v.deg.end()) common.push_back(e);
  if (common.empty()) return {{}, u, v};
  int i = *std::max_element(common.begin(), common.end());
  PairNF sub = normalize_pair({word_strip(u.deg, i), u.base}, {word_strip(v.deg, i), v.base});
  return {word_insert(sub.deg, i), sub.a, sub.b};
}

std::string pair_id(const SimplexRef& u, const SimplexRef& v) {
  return "(" + refstr(u) + "|" + refstr(v) + ")";
}

SimplexRef ProductSSet::pair_ref(const SSet& A, const SSet& B, SimplexRef u, SimplexRef v) const {
  (void)A;
  (void)B;
  PairNF nf = normalize_pair(u, v);
  std::string id = pair_id(nf.a, nf.b);
  if (!sset.has_cell(id)) throw std::runtime_error("pair_ref: no cell " + id);
  return {nf.deg, id};
}

std::pair<SimplexRef, SimplexRef> ProductSSet::unpair(const SSet&, const SSet&,
                                                      const SimplexRef& r) const {
  auto pr = parts.at(r.base);
  for (auto it = r.deg.rbegin(); it != r.deg.rend(); ++it) {
    pr.first.deg = word_insert(pr.first.deg, *it);
    pr.second.deg = word_insert(pr.second.deg, *it);
  }
  return pr;
}

static bool words_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  return true;
}

ProductSSet product(const SSet& A, const SSet& B) {
  ProductSSet P;
  if (A.top_dim < 0 || B.top_dim < 0) return P;
  int top = A.top_dim + B.top_dim;
  for (int n = 0; n <= top; ++n) {
    auto ra = A.all_refs(n), rb = B.all_refs(n);
    for (auto& u : ra)
      for (auto& v : rb) {
        if (!words_disjoint(u.deg, v.deg)) continue;
        std::string id = pair_id(u, v);
        P.sset.add_cell(n, id);
        P.parts[id] = {u, v};
        P.proj1.assignment[id] = u;
        P.proj2.assignment[id] = v;
      }
  }
  for (auto& [id, pr] : P.parts) {
    int n = P.sset.dim_of(id);
    if (n == 0) continue;
    std::vector<SimplexRef> fs;
    for (int i = 0; i <= n; ++i) {
      PairNF nf = normalize_pair(A.face(pr.first, i), B.face(pr.second, i));
      fs.push_back({nf.deg, pair_id(nf.a, nf.b)});
    }
    P.sset.set_faces(id, std::move(fs));
  }
  P.sset.sort_cells();
  return P;
}

SMap pairing(const SSet& R, const SSet& A, const SSet& B, const ProductSSet& P,
             const SMap& f, const SMap& g) {
  SMap out;
  for (auto& lv : R.cells)
    for (auto& id : lv) out.assignment[id] = P.pair_ref(A, B, f.at(id), g.at(id));
  return out;
}

SMap product_map(const SSet& A, const SSet& B, const ProductSSet& P,
                 const SSet& A2, const SSet& B2, const ProductSSet& Q,
                 const SMap& f, const SMap& g) {
  SMap out;
  for (auto& [id, pr] : P.parts)
    out.assignment[id] = Q.pair_ref(A2, B2, f.apply(A2, pr.first), g.apply(B2, pr.second));
  return out;
}

PullbackSSet pullback(const SSet& X, const SSet& Y, const SSet& Z,
                      const SMap& f, const SMap& g) {
  PullbackSSet P;
  if (X.top_dim < 0 || Y.top_dim < 0) return P;
  int top = X.top_dim + Y.top_dim;
  for (int n = 0; n <= top; ++n) {
    auto rx = X.all_refs(n), ry = Y.all_refs(n);
    for (auto& u : rx)
      for (auto& v : ry) {
        if (!words_disjoint(u.deg, v.deg)) continue;
        if (!(f.apply(Z, u) == g.apply(Z, v))) continue;
        std::string id = pair_id(u, v);
        P.sset.add_cell(n, id);
        P.parts[id] = {u, v};
        P.proj1.assignment[id] = u;
        P.proj2.assignment[id] = v;
      }
  }
  for (auto& [id, pr] : P.parts) {
    int n = P.sset.dim_of(id);
    if (n == 0) continue;
    std::vector<SimplexRef> fs;
    for (int i = 0; i <= n; ++i) {
      PairNF nf = normalize_pair(X.face(pr.first, i), Y.face(pr.second, i));
      fs.push_back({nf.deg, pair_id(nf.a, nf.b)});
    }
    P.sset.set_faces(id, std::move(fs));
  }
  P.sset.sort_cells();
  return P;
}

static SimplexRef relabel(const SimplexRef& r, const std::string& pre) {
  return {r.deg, pre + r.base};
}

PushoutSSet pushout_mono(const SSet& Z, const SSet& X, const SSet& Y,
                         const SMap& f, const SMap& g) {
  std::map<std::string, std::string> gpre;   // image cell in Y -> cell of Z
  for (auto& lv : Z.cells)
    for (auto& id : lv) {
      const SimplexRef& r = g.at(id);
      if (!r.deg.empty()) throw std::runtime_error("pushout_mono: attaching map not mono");
      if (!gpre.emplace(r.base, id).second)
        throw std::runtime_error("pushout_mono: attaching map not mono");
    }
  PushoutSSet P;
  auto resolve = [&](const SimplexRef& r) -> SimplexRef {
    auto it = gpre.find(r.base);
    SimplexRef out;
    if (it == gpre.end()) {
      out = relabel(r, "y.");
    } else {
      out = relabel(f.at(it->second), "x.");
      for (auto w = r.deg.rbegin(); w != r.deg.rend(); ++w) out.deg = word_insert(out.deg, *w);
    }
    return out;
  };
  for (int n = 0; n < (int)X.cells.size(); ++n)
    for (auto& id : X.cells[n]) {
      P.sset.add_cell(n, "x." + id);
      if (n >= 1) {
        std::vector<SimplexRef> fs;
        for (auto& r : X.faces.at(id)) fs.push_back(relabel(r, "x."));
        P.sset.set_faces("x." + id, std::move(fs));
      }
      P.inj1.assignment[id] = {{}, "x." + id};
    }
  for (int n = 0; n < (int)Y.cells.size(); ++n)
    for (auto& id : Y.cells[n]) {
      if (gpre.count(id)) {
        P.inj2.assignment[id] = relabel(f.at(gpre.at(id)), "x.");
        continue;
      }
      P.sset.add_cell(n, "y." + id);
      if (n >= 1) {
        std::vector<SimplexRef> fs;
        for (auto& r : Y.faces.at(id)) fs.push_back(resolve(r));
        P.sset.set_faces("y." + id, std::move(fs));
      }
      P.inj2.assignment[id] = {{}, "y." + id};
    }
  P.sset.sort_cells();
  return P;
}

PushoutSSet disjoint_union(const SSet& X, const SSet& Y) {
  SSet Z;
  SMap f, g;
  return pushout_mono(Z, X, Y, f, g);
}

JoinSSet join_cone(const SSet& J) {
  JoinSSet out;
  out.apex = "apex";
  out.sset.add_cell(0, "apex");
  for (int n = 0; n < (int)J.cells.size(); ++n)
    for (auto& id : J.cells[n]) {
      out.sset.add_cell(n, "j." + id);
      out.sset.add_cell(n + 1, "c." + id);
      out.incl.assignment[id] = {{}, "j." + id};
    }
  for (int n = 0; n < (int)J.cells.size(); ++n)
    for (auto& id : J.cells[n]) {
      if (n >= 1) {
        std::vector<SimplexRef> fs;
        for (auto& r : J.faces.at(id)) fs.push_back(relabel(r, "j."));
        out.sset.set_faces("j." + id, std::move(fs));
      }
      std::vector<SimplexRef> cf;
      cf.push_back({{}, "j." + id});
      if (n == 0) {
        cf.push_back({{}, "apex"});
      } else {
        for (int i = 0; i <= n; ++i) {
          SimplexRef r = J.faces.at(id)[i];
          for (int& w : r.deg) ++w;
          r.base = "c." + r.base;
          cf.push_back(r);
        }
      }
      out.sset.set_faces("c." + id, std::move(cf));
    }
  out.sset.sort_cells();
  return out;
}

JoinSSet join_cocone(const SSet& J) {
  JoinSSet out;
  out.apex = "apex";
  out.sset.add_cell(0, "apex");
  for (int n = 0; n < (int)J.cells.size(); ++n)
    for (auto& id : J.cells[n]) {
      out.sset.add_cell(n, "j." + id);
      out.sset.add_cell(n + 1, "c." + id);
      out.incl.assignment[id] = {{}, "j." + id};
    }
  for (int n = 0; n < (int)J.cells.size(); ++n)
    for (auto& id : J.cells[n]) {
      if (n >= 1) {
        std::vector<SimplexRef> fs;
        for (auto& r : J.faces.at(id)) fs.push_back(relabel(r, "j."));
        out.sset.set_faces("j." + id, std::move(fs));
      }
      std::vector<SimplexRef> cf;
      if (n == 0) {
        cf.push_back({{}, "apex"});
        cf.push_back({{}, "j." + id});
      } else {
        for (int i = 0; i <= n; ++i) cf.push_back(relabel(J.faces.at(id)[i], "c."));
        cf.push_back({{}, "j." + id});
      }
      out.sset.set_faces("c." + id, std::move(cf));
    }
  out.sset.sort_cells();
  return out;
}

SimplexRef opposite_ref(const SSet& S, const SimplexRef& r) {
  int m = S.ref_dim(r);
  std::vector<int> w;
  for (int e : r.deg) w.push_back(m - 1 - e);
  std::sort(w.rbegin(), w.rend());
  return {w, r.base};
}

SSet opposite(const SSet& S) {
  SSet out;
  for (int n = 0; n < (int)S.cells.size(); ++n)
    for (auto& id : S.cells[n]) {
      out.add_cell(n, id);
      if (n >= 1) {
        std::vector<SimplexRef> fs;
        for (int i = 0; i <= n; ++i) fs.push_back(opposite_ref(S, S.faces.at(id)[n - i]));
        out.set_faces(id, std::move(fs));
      }
    }
  out.sort_cells();
  return out;
}

SMap opposite_smap(const SSet& S, const SMap& f, const SSet& T) {
  SMap out;
  for (auto& [c, r] : f.assignment) {
    (void)S;
    out.assignment[c] = opposite_ref(T, r);
  }
  return out;
}

namespace {

struct MapSearch {
  const SSet& S;
  const SSet& T;
  const std::map<std::string, SimplexRef>* pre;
  std::vector<std::pair<int, std::string>> order;          // (dim, id), sorted
  std::map<std::string, std::vector<std::string>> deps;    // cell -> higher cells using it
  std::map<std::string, int> missing;                      // unassigned face-base count
  std::map<std::string, SimplexRef> asg;
  std::map<int, std::map<std::string, std::vector<SimplexRef>>> face_index;
  std::vector<SimplexRef> tverts;
  std::vector<SMap> results;
  bool first_only = false;
  size_t budget = 0;
  bool done = false;
  uint64_t steps = 0;
  bool shuffle = false;
  uint64_t rng = 0;

  MapSearch(const SSet& s, const SSet& t, const std::map<std::string, SimplexRef>* p)
      : S(s), T(t), pre(p) {
    for (int n = 0; n < (int)S.cells.size(); ++n)
      for (auto& id : S.cells[n]) {
        order.push_back({n, id});
        if (n >= 1) {
          std::set<std::string> bases;
          for (auto& r : S.faces.at(id)) bases.insert(r.base);
          missing[id] = (int)bases.size();
          for (auto& b : bases) deps[b].push_back(id);
        } else {
          missing[id] = 0;
        }
      }
    std::sort(order.begin(), order.end());
    if (!T.cells.empty())
      for (auto& v : T.cells[0]) tverts.push_back({{}, v});
    for (int n = 1; n <= S.top_dim; ++n) {
      auto rs = T.all_refs(n);
      for (auto& r : rs) {
        std::ostringstream key;
        for (int i = 0; i <= n; ++i) key << refstr(T.face(r, i)) << ';';
        face_index[n][key.str()].push_back(r);
      }
    }
  }

  std::vector<SimplexRef> candidates(const std::string& id, int n) {
    if (pre) {
      auto it = pre->find(id);
      if (it != pre->end()) {
        if (n >= 1) {
          for (int i = 0; i <= n; ++i) {
            SimplexRef want = apply_asg(S.faces.at(id)[i]);
            if (T.face(it->second, i) != want) return {};
          }
        }
        return {it->second};
      }
    }
    if (n == 0) return tverts;
    std::ostringstream key;
    for (int i = 0; i <= n; ++i) key << refstr(apply_asg(S.faces.at(id)[i])) << ';';
    auto& idx = face_index[n];
    auto it = idx.find(key.str());
    if (it == idx.end()) return {};
    return it->second;
  }

  SimplexRef apply_asg(const SimplexRef& r) {
    SimplexRef out = asg.at(r.base);
    for (auto it = r.deg.rbegin(); it != r.deg.rend(); ++it) out.deg = word_insert(out.deg, *it);
    return out;
  }

  void run() {
    if (order.empty()) {
      results.push_back(SMap{});
      return;
    }
    step();
  }

  void step() {
    if (done) return;
    if (++steps > 400000000ull) throw std::runtime_error("map search: step budget exceeded");
    if (asg.size() == order.size()) {
      results.push_back(SMap{asg});
      if (first_only) done = true;
      if (budget && results.size() > budget)
        throw std::runtime_error("map search: result budget exceeded");
      return;
    }
    const std::string* pick = nullptr;
    int pick_dim = -1;
    std::vector<SimplexRef> pick_cands;
    for (auto& [n, id] : order) {
      if (asg.count(id) || missing[id] > 0) continue;
      auto cands = candidates(id, n);
      if (!pick || cands.size() < pick_cands.size()) {
        pick = &id;
        pick_dim = n;
        pick_cands = std::move(cands);
        if (pick_cands.empty() || pick_cands.size() == 1) break;
      }
    }
    (void)pick_dim;
    if (!pick) throw std::runtime_error("map search: no ready cell");
    const std::string id = *pick;
    if (shuffle) {
      for (size_t i = pick_cands.size(); i > 1; --i)
        std::swap(pick_cands[i - 1], pick_cands[splitmix64(rng) % i]);
    }
    for (auto& cand : pick_cands) {
      asg[id] = cand;
      for (auto& d : deps[id]) --missing[d];
      step();
      for (auto& d : deps[id]) ++missing[d];
      asg.erase(id);
      if (done) return;
    }
  }
};

}  // namespace

std::vector<SMap> enumerate_maps(const SSet& S, const SSet& T,
                                 const std::map<std::string, SimplexRef>* pre, size_t budget) {
  MapSearch ms(S, T, pre);
  ms.budget = budget;
  ms.run();
  return ms.results;
}

std::optional<SMap> find_map(const SSet& S, const SSet& T,
                             const std::map<std::string, SimplexRef>* pre) {
  MapSearch ms(S, T, pre);
  ms.first_only = true;
  ms.run();
  if (ms.results.empty()) return std::nullopt;
  return ms.results[0];
}

std::optional<SMap> random_map(const SSet& S, const SSet& T, uint64_t seed) {
  MapSearch ms(S, T, nullptr);
  ms.first_only = true;
  ms.shuffle = true;
  ms.rng = seed ^ 0x5bd1e995u;
  ms.run();
  if (ms.results.empty()) return std::nullopt;
  return ms.results[0];
}

std::optional<SMap> iso_ssets(const SSet& S, const SSet& T) {
  if (S.cells.size() != T.cells.size()) return std::nullopt;
  for (size_t n = 0; n < S.cells.size(); ++n)
    if (S.cells[n].size() != T.cells[n].size()) return std::nullopt;

  auto signature = [](const SSet& X) {
    std::map<std::string, std::map<std::pair<int, size_t>, int>> sig;
    for (auto& lv : X.cells)
      for (auto& id : lv) sig[id];
    for (auto& [id, fs] : X.faces) {
      int n = X.dim_of(id);
      for (auto& r : fs) sig[r.base][{n, r.deg.size()}]++;
    }
    return sig;
  };
  auto sigS = signature(S), sigT = signature(T);

  std::map<std::string, SimplexRef> asg;
  std::set<std::string> used;
  std::vector<std::pair<int, std::string>> order;
  for (int n = 0; n < (int)S.cells.size(); ++n)
    for (auto& id : S.cells[n]) order.push_back({n, id});
  std::sort(order.begin(), order.end());

  std::function<bool(size_t)> go = [&](size_t pos) -> bool {
    if (pos == order.size()) return true;
    auto [n, id] = order[pos];
    for (auto& cand : T.cells[n]) {
      if (used.count(cand) || sigS.at(id) != sigT.at(cand)) continue;
      bool ok = true;
      if (n >= 1) {
        for (int i = 0; i <= n && ok; ++i) {
          const SimplexRef& sf = S.faces.at(id)[i];
          SimplexRef img = asg.at(sf.base);
          for (auto it = sf.deg.rbegin(); it != sf.deg.rend(); ++it)
            img.deg = word_insert(img.deg, *it);
          if (T.faces.at(cand)[i] != img) ok = false;
        }
      }
      if (!ok) continue;
      asg[id] = {{}, cand};
      used.insert(cand);
      if (go(pos + 1)) return true;
      asg.erase(id);
      used.erase(cand);
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  SMap f{asg};
  validate_smap(S, T, f);
  return f;
}

/* ---------- truncated hom ---------- */

static SMap hom_whisker(const HomSSet& H, const SSet& S, const SSet& T, const SMap& m,
                        int from_level, const std::vector<int>& alpha) {
  int l = (int)alpha.size() - 1;
  SMap am = simplex_map(alpha, from_level);
  SMap pm = product_map(std_simplex(l), S, H.dom_prod[l], std_simplex(from_level), S,
                        H.dom_prod[from_level], am, id_map(S));
  SMap out;
  for (auto& [c, r] : pm.assignment) out.assignment[c] = m.apply(T, r);
  return out;
}

SMap precompose_left(const SSet& S, const SSet& T, const HomSSet& H,
                     const SMap& m, int from_level, const std::vector<int>& alpha) {
  return hom_whisker(H, S, T, m, from_level, alpha);
}

static std::vector<int> delta_alpha(int n, int skip) {
  std::vector<int> a;
  for (int v = 0; v <= n; ++v)
    if (v != skip) a.push_back(v);
  return a;
}

static std::vector<int> sigma_alpha(int n, int rep) {
  std::vector<int> a;
  for (int v = 0; v <= n + 1; ++v) a.push_back(v <= rep ? v : v - 1);
  return a;
}

HomSSet truncated_hom(const SSet& S, const SSet& T, int k) {
  HomSSet H;
  H.k = k;
  for (int n = 0; n <= k; ++n) {
    H.dom_prod.push_back(product(std_simplex(n), S));
    H.dom.push_back(H.dom_prod.back().sset);
  }
  H.lookup.resize(k + 1);
  for (int n = 0; n <= k; ++n) {
    auto maps = enumerate_maps(H.dom[n], T);
    std::vector<SMap> nondeg;
    for (auto& m : maps) {
      bool degen = false;
      for (int j = 0; j < n && !degen; ++j) {
        SMap dj = hom_whisker(H, S, T, m, n, delta_alpha(n, j));
        SMap sj = hom_whisker(H, S, T, dj, n - 1, sigma_alpha(n - 1, j));
        if (sj == m) degen = true;
      }
      if (!degen) nondeg.push_back(m);
    }
    std::sort(nondeg.begin(), nondeg.end(),
              [](const SMap& a, const SMap& b) { return serialize(a) < serialize(b); });
    H.level.push_back(nondeg);
    for (size_t i = 0; i < nondeg.size(); ++i) {
      std::string id = "h" + std::to_string(n) + "_" + std::to_string(i);
      H.hom.add_cell(n, id);
      H.index[id] = {n, (int)i};
      H.lookup[n][serialize(nondeg[i])] = (int)i;
    }
  }
  for (int n = 1; n <= k; ++n) {
    for (size_t i = 0; i < H.level[n].size(); ++i) {
      std::vector<SimplexRef> fs;
      for (int j = 0; j <= n; ++j) {
        SMap dj = hom_whisker(H, S, T, H.level[n][i], n, delta_alpha(n, j));
        fs.push_back(hom_ref_of_map(H, S, T, dj, n - 1));
      }
      H.hom.set_faces("h" + std::to_string(n) + "_" + std::to_string(i), std::move(fs));
    }
  }
  H.hom.sort_cells();
  return H;
}

SMap hom_map_of_ref(const HomSSet& H, const SSet& S, const SSet& T, const SimplexRef& r) {
  auto [n, i] = H.index.at(r.base);
  SMap m = H.level[n][i];
  int cur = n;
  for (auto it = r.deg.rbegin(); it != r.deg.rend(); ++it) {
    m = hom_whisker(H, S, T, m, cur, sigma_alpha(cur, *it));
    ++cur;
  }
  return m;
}

SimplexRef hom_ref_of_map(const HomSSet& H, const SSet& S, const SSet& T, const SMap& m, int n) {
  for (int j = n - 1; j >= 0; --j) {
    SMap dj = hom_whisker(H, S, T, m, n, delta_alpha(n, j));
    SMap sj = hom_whisker(H, S, T, dj, n - 1, sigma_alpha(n - 1, j));
    if (sj == m) {
      SimplexRef sub = hom_ref_of_map(H, S, T, dj, n - 1);
      return {word_insert(sub.deg, j), sub.base};
    }
  }
  auto it = H.lookup[n].find(serialize(m));
  if (it == H.lookup[n].end()) throw std::runtime_error("hom: cell lookup failed");
  return {{}, "h" + std::to_string(n) + "_" + std::to_string(it->second)};
}

SMap hom_precompose(const SSet& S, const SSet& Sp, const SSet& T,
                    const HomSSet& H, const HomSSet& Hp, const SMap& sigma) {
  if (H.k != Hp.k) throw std::runtime_error("hom_precompose: truncation mismatch");
  SMap out;
  for (auto& [id, ni] : H.index) {
    auto [n, i] = ni;
    SMap pm = product_map(std_simplex(n), Sp, Hp.dom_prod[n], std_simplex(n), S,
                          H.dom_prod[n], id_map(std_simplex(n)), sigma);
    SMap comp;
    for (auto& [c, r] : pm.assignment) comp.assignment[c] = H.level[n][i].apply(T, r);
    out.assignment[id] = hom_ref_of_map(Hp, Sp, T, comp, n);
  }
  return out;
}

SMap hom_postcompose(const SSet& S, const SSet& T, const SSet& Tp,
                     const HomSSet& H, const HomSSet& Hp, const SMap& tau) {
  if (H.k != Hp.k) throw std::runtime_error("hom_postcompose: truncation mismatch");
  SMap out;
  for (auto& [id, ni] : H.index) {
    auto [n, i] = ni;
    SMap comp;
    for (auto& [c, r] : H.level[n][i].assignment) comp.assignment[c] = tau.apply(Tp, r);
    out.assignment[id] = hom_ref_of_map(Hp, S, Tp, comp, n);
  }
  return out;
}

SMap ev_vertex(const HomSSet& H, const SSet& S, const SSet& T, const std::string& v) {
  (void)S;
  (void)T;
  SMap out;
  for (auto& [id, ni] : H.index) {
    auto [n, i] = ni;
    std::vector<int> full;
    for (int t = 0; t <= n; ++t) full.push_back(t);
    std::string cell = pair_id(SimplexRef{{}, chain_id(full)}, deg_vertex_ref(v, n));
    out.assignment[id] = H.level[n][i].at(cell);
  }
  return out;
}

SMap HomSSet::vertex_map(const SSet& S, const SSet& T, const std::string& v) const {
  (void)T;
  auto [n, i] = index.at(v);
  if (n != 0) throw std::runtime_error("vertex_map: not a vertex");
  const SMap& h = level[0][i];
  SMap out;
  for (auto& lv : S.cells)
    for (auto& id : lv) {
      SimplexRef d0 = deg_vertex_ref("0", S.dim_of(id));
      out.assignment[id] = h.at(pair_id(d0, SimplexRef{{}, id}));
    }
  return out;
}

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace rigged
