#include <algorithm>
#include <climits>
#include <sstream>

#include "rigged/enriched.hpp"

namespace rigged {

[[noreturn]] static void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string serialize_family(const LimitFamily& f) {
  std::ostringstream os;
  for (auto& [a, m] : f.comp) os << a << '#' << serialize(m) << '\n';
  return os.str();
}

/* Strictly decreasing degeneracy words of length s over {0..d-1}, as sorted
   position masks. */
static void word_masks(int d, int s, std::vector<unsigned>& out) {
  out.clear();
  for (unsigned m = 0; m < (1u << d); ++m)
    if (__builtin_popcount(m) == s) out.push_back(m);
}

static std::vector<int> mask_word(unsigned m) {
  std::vector<int> w;
  for (int i = 31; i >= 0; --i)
    if (m & (1u << i)) w.push_back(i);
  return w;
}

namespace {

/* One naturality condition: the component at b evaluated at X must equal the
   action of u on the component at a evaluated at Y. */
struct Inst {
  std::string a, b;
  SimplexRef u, Y, X;
};

struct Level {
  int m = 0;
  SSet Dm;
  std::map<std::string, ProductSSet> prod;  // full products
  std::map<std::string, SSet> dom;          // truncations actually carrying the family
};

struct Engine {
  const ECat& A;
  const EWeight& W;
  const EWeight& F;
  size_t budget;
  int check_dim;
  size_t steps = 0;

  /* by_faces[a][d]: face-value key -> refs of F(a) with those faces */
  std::map<std::string, std::map<int, std::map<std::string, std::vector<SimplexRef>>>> by_faces;

  Level lv;
  std::vector<std::pair<std::string, std::string>> vars;  // (object, product cell)
  std::vector<Inst> insts;
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> triggers;

  std::map<std::pair<std::string, std::string>, SimplexRef> assign;
  std::vector<std::pair<std::string, std::string>> trail;
  std::vector<std::pair<std::string, std::string>> pending;
  std::vector<LimitFamily> sols;

  Engine(const ECat& A_, const EWeight& W_, const EWeight& F_, size_t budget_, int check_dim_)
      : A(A_), W(W_), F(F_), budget(budget_), check_dim(check_dim_) {}

  void tick() {
    if (++steps > budget) fail("weighted limit: search budget exceeded");
  }

  int dom_top(const std::string& a) const {
    const SSet& d = lv.dom.at(a);
    return (int)d.cells.size() - 1;
  }

  const std::map<std::string, std::vector<SimplexRef>>& face_index(const std::string& a, int d) {
    auto& slot = by_faces[a][d];
    if (slot.empty()) {
      const SSet& V = F.at(a).loose;
      for (auto& r : V.all_refs(d)) {
        std::ostringstream os;
        for (int i = 0; i <= d; ++i) os << refstr(V.face(r, i)) << '|';
        slot[os.str()].push_back(r);
      }
    }
    return slot;
  }

  void build_level(int m) {
    lv = Level{};
    lv.m = m;
    lv.Dm = std_simplex(m);
    vars.clear();
    insts.clear();
    triggers.clear();
    assign.clear();
    trail.clear();
    pending.clear();
    sols.clear();
    for (auto& a : A.objects) {
      ProductSSet P = product(lv.Dm, W.at(a).loose);
      int cut = std::min(W.cut_of(a), P.sset.top_dim);
      lv.dom[a] = truncate(P.sset, std::max(cut, 0));
      lv.prod[a] = std::move(P);
    }
    for (auto& a : A.objects) {
      const SSet& D = lv.dom.at(a);
      for (int d = 0; d < (int)D.cells.size(); ++d)
        for (auto& id : D.cells[d]) vars.push_back({a, id});
    }
    std::stable_sort(vars.begin(), vars.end(),
                     [&](const std::pair<std::string, std::string>& x,
                         const std::pair<std::string, std::string>& y) {
                       if (x.first != y.first) return x.first < y.first;
                       int dx = lv.dom.at(x.first).dim_of(x.second);
                       int dy = lv.dom.at(y.first).dim_of(y.second);
                       if (dx != dy) return dx < dy;
                       return x.second < y.second;
                     });
    build_instances();
  }

  void build_instances() {
    for (auto& a : A.objects)
      for (auto& b : A.objects) {
        const SSet& H = A.hom_of(a, b).loose;
        const SSet& WA = W.at(a).loose;
        if (H.total_cells() == 0 || WA.total_cells() == 0) continue;
        int cap = std::min(std::min(W.cut_of(a), W.cut_of(b)),
                           H.top_dim + lv.m + std::max(WA.top_dim, 0));
        if (check_dim >= 0) cap = std::min(cap, check_dim);
        for (int d = 0; d <= cap; ++d) add_instances(a, b, d);
      }
  }

  /* Jointly nondegenerate triples (u, delta, w) of dimension d: the three
     degeneracy words never share an entry. */
  void add_instances(const std::string& a, const std::string& b, int d) {
    const SSet& H = A.hom_of(a, b).loose;
    const SSet& WA = W.at(a).loose;
    const std::string idv = a == b ? A.id.at(a) : std::string();
    std::vector<unsigned> wu, wd, ww;
    for (int p = 0; p <= std::min(d, H.top_dim); ++p) {
      if (p >= (int)H.cells.size() || H.cells[p].empty()) continue;
      word_masks(d, d - p, wu);
      for (int q = 0; q <= std::min(d, lv.m); ++q) {
        word_masks(d, d - q, wd);
        for (int r = 0; r <= std::min(d, WA.top_dim); ++r) {
          if (r >= (int)WA.cells.size() || WA.cells[r].empty()) continue;
          word_masks(d, d - r, ww);
          for (unsigned mu : wu)
            for (unsigned md : wd)
              for (unsigned mw : ww) {
                if (mu & md & mw) continue;
                std::vector<int> uw = mask_word(mu), dw = mask_word(md), www = mask_word(mw);
                for (auto& u0 : H.cells[p]) {
                  if (!idv.empty() && p == 0 && (int)uw.size() == d && u0 == idv) continue;
                  SimplexRef u{uw, u0};
                  for (auto& d0 : lv.Dm.cells[q]) {
                    SimplexRef delta{dw, d0};
                    for (auto& w0 : WA.cells[r]) {
                      tick();
                      SimplexRef w{www, w0};
                      auto aw = W.apply(a, b, u, w);
                      if (!aw) continue;
                      SimplexRef Y = lv.prod.at(a).pair_ref(lv.Dm, WA, delta, w);
                      SimplexRef X =
                          lv.prod.at(b).pair_ref(lv.Dm, W.at(b).loose, delta, *aw);
                      if (a == b && Y == X) continue;
                      size_t idx = insts.size();
                      insts.push_back({a, b, u, Y, X});
                      triggers[{a, Y.base}].push_back(idx);
                    }
                  }
                }
              }
        }
      }
    }
  }

  std::vector<SimplexRef> candidates(const std::string& a, const std::string& cell) {
    const SSet& D = lv.dom.at(a);
    int d = D.dim_of(cell);
    if (d == 0) return F.at(a).loose.all_refs(0);
    std::ostringstream os;
    for (auto& fr : D.faces.at(cell))
      os << refstr(apply_word(assign.at({a, fr.base}), fr.deg)) << '|';
    auto& idx = face_index(a, d);
    auto it = idx.find(os.str());
    if (it == idx.end()) return {};
    return it->second;
  }

  bool push_assign(const std::string& a, const std::string& cell, const SimplexRef& r) {
    assign[{a, cell}] = r;
    trail.push_back({a, cell});
    pending.push_back({a, cell});
    return true;
  }

  void undo_to(size_t mark) {
    while (trail.size() > mark) {
      assign.erase(trail.back());
      trail.pop_back();
    }
    pending.clear();
  }

  bool eval_inst(const Inst& I) {
    tick();
    SimplexRef vy = apply_word(assign.at({I.a, I.Y.base}), I.Y.deg);
    auto rhs = F.apply(I.a, I.b, I.u, vy);
    if (!rhs) return true;
    auto xv = assign.find({I.b, I.X.base});
    if (xv != assign.end()) return apply_word(xv->second, I.X.deg) == *rhs;
    auto x = strip_word(*rhs, I.X.deg);
    if (!x) return false;
    const SSet& D = lv.dom.at(I.b);
    const SSet& V = F.at(I.b).loose;
    int d = D.dim_of(I.X.base);
    if (d > 0) {
      const auto& frs = D.faces.at(I.X.base);
      for (int i = 0; i <= d; ++i) {
        auto fv = assign.find({I.b, frs[i].base});
        if (fv == assign.end()) continue;
        if (!(apply_word(fv->second, frs[i].deg) == V.face(*x, i))) return false;
      }
    }
    return push_assign(I.b, I.X.base, *x);
  }

  bool propagate() {
    while (!pending.empty()) {
      auto key = pending.back();
      pending.pop_back();
      auto it = triggers.find(key);
      if (it == triggers.end()) continue;
      for (size_t idx : it->second)
        if (!eval_inst(insts[idx])) return false;
    }
    return true;
  }

  void record_solution() {
    LimitFamily fam;
    for (auto& a : A.objects) {
      SMap m;
      const SSet& D = lv.dom.at(a);
      for (auto& lvl : D.cells)
        for (auto& id : lvl) m.assignment[id] = assign.at({a, id});
      fam.comp[a] = std::move(m);
    }
    for (auto& a : A.objects) {
      try {
        validate_smap(lv.dom.at(a), F.at(a).loose, fam.comp.at(a));
      } catch (const std::exception&) {
        return;
      }
    }
    sols.push_back(std::move(fam));
  }

  void search(size_t vi) {
    while (vi < vars.size() && assign.count(vars[vi])) ++vi;
    if (vi == vars.size()) {
      record_solution();
      return;
    }
    auto [a, cell] = vars[vi];
    for (auto& cand : candidates(a, cell)) {
      tick();
      size_t mark = trail.size();
      push_assign(a, cell, cand);
      if (propagate()) search(vi + 1);
      undo_to(mark);
    }
  }

  std::vector<LimitFamily> run(int m) {
    build_level(m);
    search(0);
    std::sort(sols.begin(), sols.end(), [](const LimitFamily& x, const LimitFamily& y) {
      return serialize_family(x) < serialize_family(y);
    });
    return sols;
  }
};

}  // namespace

/* Family precomposed with (alpha x id) on every component. */
static LimitFamily family_restrict(const WeightedLimit& L, const EWeight& W, const EWeight& F,
                                   const LimitFamily& fam, const std::vector<int>& alpha,
                                   int m_from) {
  int m_to = (int)alpha.size() - 1;
  SSet De = std_simplex(m_to), Dm = std_simplex(m_from);
  LimitFamily out;
  for (auto& [a, comp] : fam.comp) {
    const SSet& WA = W.at(a).loose;
    const ProductSSet& Pe = L.doms[m_to].at(a);
    const ProductSSet& Pm = L.doms[m_from].at(a);
    SMap tr = product_map(De, WA, Pe, Dm, WA, Pm, simplex_map(alpha, m_from), id_map(WA));
    int cut = std::min(W.cut_of(a), Pe.sset.top_dim);
    SMap g;
    for (int d = 0; d <= std::max(cut, 0) && d < (int)Pe.sset.cells.size(); ++d)
      for (auto& id : Pe.sset.cells[d])
        g.assignment[id] = comp.apply(F.at(a).loose, tr.at(id));
    out.comp[a] = std::move(g);
  }
  return out;
}

/* Values of delta_{i+1} o sigma_i : [m] -> [m]; fixed by exactly the families
   degenerate along sigma_i. */
static std::vector<int> collapse_values(int m, int i) {
  std::vector<int> v(m + 1);
  for (int t = 0; t <= m; ++t) v[t] = t;
  v[i + 1] = i;
  return v;
}

/* Values of delta_i : [m-1] -> [m]. */
static std::vector<int> skip_values(int m, int i) {
  std::vector<int> v;
  for (int t = 0; t <= m; ++t)
    if (t != i) v.push_back(t);
  return v;
}

static std::string family_key(const LimitFamily& f) { return serialize_family(f); }

/* Ref of the normal form of a (possibly degenerate) family at level m. */
static SimplexRef normalize_family(const WeightedLimit& L, const EWeight& W, const EWeight& F,
                                   const LimitFamily& fam, int m) {
  for (int i = 0; i + 1 <= m; ++i) {
    LimitFamily rt = family_restrict(L, W, F, fam, collapse_values(m, i), m);
    if (family_key(rt) == family_key(fam)) {
      LimitFamily inner = family_restrict(L, W, F, fam, skip_values(m, i), m);
      SimplexRef sub = normalize_family(L, W, F, inner, m - 1);
      return {word_insert(sub.deg, i), sub.base};
    }
  }
  auto it = L.index[m].find(family_key(fam));
  if (it == L.index[m].end()) fail("weighted limit: face family missing from level");
  return {{}, it->second};
}

WeightedLimit weighted_limit(const ECat& A, const EWeight& W, const EWeight& F, size_t budget,
                             int check_dim) {
  WeightedLimit L;
  L.k = A.k;
  Engine eng(A, W, F, budget, check_dim);
  for (int m = 0; m <= A.k; ++m) {
    std::vector<LimitFamily> sols = eng.run(m);
    L.families.push_back({});
    L.index.push_back({});
    L.doms.push_back({});
    for (auto& a : A.objects) L.doms[m][a] = eng.lv.prod.at(a);
    std::vector<LimitFamily> nondeg;
    for (auto& fam : sols) {
      bool degen = false;
      for (int i = 0; i + 1 <= m && !degen; ++i)
        degen = family_key(family_restrict(L, W, F, fam, collapse_values(m, i), m)) ==
                family_key(fam);
      if (!degen) nondeg.push_back(fam);
    }
    for (size_t i = 0; i < nondeg.size(); ++i) {
      std::string id = "L" + std::to_string(m) + "_" + std::to_string(i);
      L.limit.loose.add_cell(m, id);
      L.families[m][id] = nondeg[i];
      L.index[m][family_key(nondeg[i])] = id;
    }
    if (m >= 1)
      for (size_t i = 0; i < nondeg.size(); ++i) {
        std::string id = "L" + std::to_string(m) + "_" + std::to_string(i);
        std::vector<SimplexRef> fs;
        for (int j = 0; j <= m; ++j) {
          LimitFamily fj = family_restrict(L, W, F, nondeg[i], skip_values(m, j), m);
          fs.push_back(normalize_family(L, W, F, fj, m - 1));
        }
        L.limit.loose.set_faces(id, std::move(fs));
      }
    if (m == 0)
      for (auto& [id, fam] : L.families[0]) {
        bool tight = true;
        for (auto& a : A.objects) {
          const SSet& WA = W.at(a).loose;
          SMap g;
          for (auto& lvl : WA.cells)
            for (auto& w : lvl) {
              int d = WA.dim_of(w);
              SimplexRef p = L.doms[0].at(a).pair_ref(std_simplex(0), WA,
                                                      deg_vertex_ref("0", d),
                                                      SimplexRef{{}, w});
              g.assignment[w] = fam.comp.at(a).apply(F.at(a).loose, p);
            }
          if (!emap_tight(W.at(a), F.at(a), g)) {
            tight = false;
            break;
          }
        }
        if (tight) L.limit.tight_vertices.insert(id);
      }
  }
  L.limit.loose.sort_cells();
  L.limit.loose.validate();
  L.limit.validate();
  return L;
}

EMap limit_projection(const WeightedLimit& L, const EWeight& W, const EWeight& F,
                      const std::string& a, const std::string& v) {
  const SSet& WA = W.at(a).loose;
  if (!WA.has_cell(v) || WA.dim_of(v) != 0) fail("limit projection: not a weight vertex");
  SMap out;
  for (int d = 0; d < (int)L.families.size(); ++d) {
    SSet Dd = std_simplex(d);
    std::vector<int> top(d + 1);
    for (int i = 0; i <= d; ++i) top[i] = i;
    for (auto& [id, fam] : L.families[d]) {
      SimplexRef p = L.doms[d].at(a).pair_ref(Dd, WA, SimplexRef{{}, chain_id(top)},
                                              deg_vertex_ref(v, d));
      out.assignment[id] = fam.comp.at(a).apply(F.at(a).loose, p);
    }
  }
  return emap(L.limit, F.at(a), out);
}

std::optional<std::string> limit_reflection_witness(const WeightedLimit& L, const EWeight& W,
                                                    const EWeight& F) {
  /* projections at tight weight vertices, per object */
  std::vector<std::tuple<std::string, std::string, EMap>> pr;
  for (auto& [a, val] : W.ob)
    for (auto& v : val.tight_vertices) pr.push_back({a, v, limit_projection(L, W, F, a, v)});
  if (L.limit.loose.cells.empty()) return std::nullopt;
  for (auto& c : L.limit.loose.cells[0]) {
    bool image_tight = true;
    for (auto& [a, v, m] : pr)
      if (!F.at(a).tight_vertex(m.map.at(c).base)) {
        image_tight = false;
        break;
      }
    if (image_tight != L.limit.tight_vertex(c)) return c;
  }
  return std::nullopt;
}

SMap yoneda_comparison(const WeightedLimit& L, const ECat& A, const std::string& a0,
                       const EWeight& F) {
  const SSet& WA = A.hom_of(a0, a0).loose;
  SMap out;
  for (int d = 0; d < (int)L.families.size(); ++d) {
    SSet Dd = std_simplex(d);
    std::vector<int> top(d + 1);
    for (int i = 0; i <= d; ++i) top[i] = i;
    for (auto& [id, fam] : L.families[d]) {
      SimplexRef p = L.doms[d].at(a0).pair_ref(Dd, WA, SimplexRef{{}, chain_id(top)},
                                               deg_vertex_ref(A.id.at(a0), d));
      out.assignment[id] = fam.comp.at(a0).apply(F.at(a0).loose, p);
    }
  }
  return out;
}

DualityReport duality_limit_check(const ECat& A, const EWeight& W, const EWeight& F,
                                  size_t budget, int check_dim) {
  DualityReport rep;
  WeightedLimit L = weighted_limit(A, W, F, budget, check_dim);
  ECat Aco = ecat_co(A);
  EWeight Wco = eweight_co(A, W);
  EWeight Fco = eweight_co(A, F);
  WeightedLimit Lco = weighted_limit(Aco, Wco, Fco, budget, check_dim);
  SSet Lop = opposite(L.limit.loose);
  SMap g;
  for (int d = 0; d < (int)L.families.size(); ++d) {
    SSet Dd = std_simplex(d);
    std::vector<int> top(d + 1);
    for (int i = 0; i <= d; ++i) top[i] = i;
    SimplexRef topref{{}, chain_id(top)};
    for (auto& [id, fam] : L.families[d]) {
      LimitFamily co;
      for (auto& a : A.objects) {
        const SSet& WA = W.at(a).loose;
        const ProductSSet& Pc = Lco.doms[d].at(a);
        int cut = std::min(Wco.cut_of(a), Pc.sset.top_dim);
        SMap cm;
        for (int e = 0; e <= std::max(cut, 0) && e < (int)Pc.sset.cells.size(); ++e)
          for (auto& pc : Pc.sset.cells[e]) {
            auto& parts = Pc.parts.at(pc);
            std::vector<int> vals = monotone_of_ref(Dd, parts.first);
            std::reverse(vals.begin(), vals.end());
            for (auto& v : vals) v = d - v;
            SimplexRef delta = act_by_monotone(Dd, topref, vals);
            SimplexRef w = opposite_ref(WA, parts.second);
            SimplexRef val = fam.comp.at(a).apply(
                F.at(a).loose, L.doms[d].at(a).pair_ref(Dd, WA, delta, w));
            cm.assignment[pc] = opposite_ref(F.at(a).loose, val);
          }
        co.comp[a] = std::move(cm);
      }
      auto it = Lco.index[d].find(family_key(co));
      if (it == Lco.index[d].end()) {
        rep.witness = "no dual family for " + id;
        return rep;
      }
      g.assignment[id] = SimplexRef{{}, it->second};
    }
  }
  if (!smap_iso(Lop, Lco.limit.loose, g)) {
    rep.witness = "dual correspondence is not an isomorphism";
    return rep;
  }
  rep.iso = true;
  bool tight_ok = true;
  if (!L.limit.loose.cells.empty())
    for (auto& c : L.limit.loose.cells[0])
      if (L.limit.tight_vertex(c) != Lco.limit.tight_vertex(g.at(c).base)) {
        tight_ok = false;
        rep.witness = "tight mismatch at " + c;
        break;
      }
  rep.tight_match = tight_ok;
  return rep;
}

}  // namespace rigged
