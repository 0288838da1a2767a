#include "rigged/lifting.hpp"

#include <algorithm>
#include <stdexcept>

#include "rigged/enriched.hpp"

namespace rigged {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

/* Action of an arbitrary monotone map on a ref, through the face/degeneracy
   factorization; generalizes the integer-chain action to any complex. */
SimplexRef act_monotone(const SSet& S, SimplexRef r, const std::vector<int>& vals) {
  int b = S.ref_dim(r);
  std::vector<int> distinct;
  for (int v : vals)
    if (distinct.empty() || distinct.back() != v) distinct.push_back(v);
  for (int i = b; i >= 0; --i)
    if (!std::binary_search(distinct.begin(), distinct.end(), i)) r = S.face(r, i);
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i] == vals[i + 1]) r = S.degenerate(r, (int)i);
  return r;
}

SimplexRef top_ref(int n) {
  std::vector<int> ch(n + 1);
  for (int i = 0; i <= n; ++i) ch[i] = i;
  return SimplexRef{{}, chain_id(ch)};
}

/* Value of a mapping-space ref on a domain ref of the same dimension. */
SimplexRef eval_hom_at(const HomSSet& H, const SSet& S, const SSet& T, const SimplexRef& w,
                       const SimplexRef& v) {
  int r = H.hom.ref_dim(w);
  SSet dr = std_simplex(r);
  SMap f = hom_map_of_ref(H, S, T, w);
  return f.apply(T, H.dom_prod[r].pair_ref(dr, S, top_ref(r), v));
}

bool chain_onto(const SimplexRef& u, int n) { return (int)parse_chain(u.base).size() == n + 1; }

/* Transpose of the edge-indexed family with legs f (vertex 0) and g (vertex 1),
   constant in the boundary direction on each leg. */
SMap edge_transpose(const SSet& A, const SSet& T, const HomSSet& powb, const SMap& f,
                    const SMap& g) {
  SMap out;
  SSet bnd = boundary(1).sset;
  for (int r = 0; r <= A.top_dim; ++r) {
    if (r > powb.k) fail("rins square: domain dimension exceeds the truncation level");
    SSet dr = std_simplex(r);
    const ProductSSet& P = powb.dom_prod[r];
    for (const auto& a : A.cells[r]) {
      SMap ms;
      for (int s = 0; s <= P.sset.top_dim; ++s)
        for (const auto& cid : P.sset.cells[s]) {
          const auto& pr = P.parts.at(cid);
          SimplexRef sa = act_monotone(A, SimplexRef{{}, a}, monotone_of_ref(dr, pr.first));
          const SMap& leg = pr.second.base == "0" ? f : g;
          ms.assignment[cid] = leg.apply(T, sa);
        }
      out.assignment[a] = hom_ref_of_map(powb, bnd, T, ms, r);
    }
  }
  return out;
}

}  // namespace

NerveFib nerve_fib(const FinCat& E, const FinCat& B, const CFunctor& P, int k) {
  if (k < 1) fail("nerve fibration: truncation level must be at least 1");
  E.validate();
  B.validate();
  if (!is_isofibration(E, B, P)) fail("nerve fibration: the functor is not an isofibration");
  NerveFib f;
  f.Ecat = E;
  f.Bcat = B;
  f.P = P;
  f.k = k;
  f.E = nerve(E, k);
  f.B = nerve(B, k);
  f.p = nerve_map(E, B, P, k);
  return f;
}

std::vector<LiftProblem> universal_instances(const SSet& E, const SSet& B, const SMap& p,
                                             const std::string& x, int n) {
  if (n < 1) fail("universal instances: dimension must be positive");
  if (!E.has_cell(x) || E.dim_of(x) != 0) fail("universal instances: anchor is not a vertex");
  std::vector<LiftProblem> out;
  SSet bn = boundary(n).sset;
  SSet dn = std_simplex(n);
  std::map<std::string, SimplexRef> pre;
  pre[std::to_string(n)] = SimplexRef{{}, x};
  for (const SMap& g : enumerate_maps(bn, E, &pre, 0)) {
    /* the base map is pinned on the boundary by the projection of g */
    std::map<std::string, SimplexRef> dpre;
    for (const auto& kv : g.assignment) dpre[kv.first] = p.apply(B, kv.second);
    for (const SMap& d : enumerate_maps(dn, B, &dpre, 0)) {
      LiftProblem lp;
      lp.g = g;
      lp.d = d;
      lp.n = n;
      lp.anchor = x;
      out.push_back(lp);
    }
  }
  return out;
}

std::optional<SMap> solve_universal_instance(const SSet& E, const SSet& B, const SMap& p,
                                             const LiftProblem& pr) {
  SSet dn = std_simplex(pr.n);
  std::optional<SMap> best;
  for (const SMap& l : enumerate_maps(dn, E, &pr.g.assignment, 0)) {
    bool ok = true;
    for (const auto& kv : l.assignment)
      if (p.apply(B, kv.second) != pr.d.at(kv.first)) {
        ok = false;
        break;
      }
    if (ok && (!best || l < *best)) best = l;
  }
  return best;
}

bool universal_by_lifting(const SSet& E, const SSet& B, const SMap& p, const std::string& x,
                          int n_max) {
  for (int n = 1; n <= n_max; ++n)
    for (const LiftProblem& pr : universal_instances(E, B, p, x, n))
      if (!solve_universal_instance(E, B, p, pr)) return false;
  return true;
}

bool universal_by_edges(const SSet& E, const SSet& B, const SMap& p, const std::string& x) {
  SimplexRef px = p.at(x);
  for (const auto& e : E.cells[0]) {
    std::string pe = p.at(e).base;
    for (const SimplexRef& beta : B.all_refs(1)) {
      if (B.vertex(beta, 0).base != pe || B.vertex(beta, 1).base != px.base) continue;
      int count = 0;
      for (const SimplexRef& alpha : E.all_refs(1)) {
        if (E.vertex(alpha, 0).base != e || E.vertex(alpha, 1).base != x) continue;
        if (p.apply(B, alpha) == beta) ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_universal_element(const SSet& E, const SSet& B, const SMap& p, const std::string& x,
                          int n_max) {
  bool lifting = universal_by_lifting(E, B, p, x, n_max);
  bool edges = universal_by_edges(E, B, p, x);
  if (n_max >= 2 && lifting != edges)
    fail("universal element: exhaustive lifting and the edge criterion disagree at " + x);
  return lifting;
}

UniversalLaliReport lali_via_universal(const NerveFib& f, int n_max) {
  if (n_max > f.k) fail("lali check: universality depth exceeds the truncation level");
  UniversalLaliReport rep;
  for (const auto& e : f.E.cells[0])
    if (is_universal_element(f.E, f.B, f.p, e, n_max)) rep.universal_vertices.push_back(e);
  rep.lali = true;
  for (const auto& bv : f.B.cells[0]) {
    bool found = false;
    for (const auto& u : rep.universal_vertices)
      if (f.p.at(u).base == bv) {
        rep.universal_preimage[bv] = u;
        found = true;
        break;
      }
    if (!found) {
      rep.lali = false;
      if (rep.witness.empty()) rep.witness = bv;
    }
  }
  rep.oracle = is_lali(f.Ecat, f.Bcat, f.P).has_value();
  rep.agrees = rep.lali == rep.oracle;
  return rep;
}

NerveFibSquare nerve_fib_square(const NerveFib& f1, const NerveFib& f2, const CFunctor& top,
                                const CFunctor& bottom) {
  if (f1.k != f2.k) fail("fibration square: truncation levels differ");
  NerveFibSquare sq;
  sq.f1 = f1;
  sq.f2 = f2;
  sq.top = top;
  sq.bottom = bottom;
  sq.e = nerve_map(f1.Ecat, f2.Ecat, top, f1.k);
  sq.b = nerve_map(f1.Bcat, f2.Bcat, bottom, f1.k);
  if (!(compose(f2.E, f2.B, f2.p, sq.e) == compose(f1.B, f2.B, sq.b, f1.p)))
    fail("fibration square: the square does not commute");
  return sq;
}

UniversalLaliSquareReport lali_morphism_via_universal(const NerveFibSquare& sq, int n_max) {
  UniversalLaliSquareReport rep;
  rep.left = lali_via_universal(sq.f1, n_max);
  rep.right = lali_via_universal(sq.f2, n_max);
  std::set<std::string> right_universal(rep.right.universal_vertices.begin(),
                                        rep.right.universal_vertices.end());
  rep.preserves = true;
  for (const auto& u : rep.left.universal_vertices)
    if (!right_universal.count(sq.e.at(u).base)) {
      rep.preserves = false;
      if (rep.witness.empty()) rep.witness = u;
    }
  auto adj1 = is_lali(sq.f1.Ecat, sq.f1.Bcat, sq.f1.P);
  auto adj2 = is_lali(sq.f2.Ecat, sq.f2.Bcat, sq.f2.P);
  if (adj1 && adj2) {
    CNat mate = mate_of_square(sq.f1.Ecat, sq.f1.Bcat, sq.f2.Ecat, sq.f2.Bcat, sq.top, sq.bottom,
                               *adj1, *adj2);
    rep.oracle = mate_is_iso(sq.f2.Ecat, mate);
  }
  rep.agrees = (rep.preserves && rep.left.lali && rep.right.lali) == rep.oracle;
  return rep;
}

size_t PrismCells::complement_count() const {
  size_t total = 0;
  for (const auto& layer : layers) total += layer.size();
  return total;
}

PrismCells prism_complement_cells(int n, int m) {
  if (n < 0 || m < 0) fail("prism: negative dimension");
  PrismCells pc;
  pc.n = n;
  pc.m = m;
  pc.prod = product(std_simplex(n), std_simplex(m));
  pc.layers.assign(pc.prod.sset.top_dim + 1, {});
  std::string term =
      pair_id(SimplexRef{{}, std::to_string(n)}, SimplexRef{{}, std::to_string(m)});
  for (int dim = 0; dim <= pc.prod.sset.top_dim; ++dim)
    for (const auto& id : pc.prod.sset.cells[dim]) {
      const auto& parts = pc.prod.parts.at(id);
      /* a cell escapes the boundary exactly when both coordinates are onto */
      if (chain_onto(parts.first, n) && chain_onto(parts.second, m)) {
        auto vs = pc.prod.sset.vertices_of_cell(id);
        if (std::find(vs.begin(), vs.end(), term) == vs.end())
          fail("prism: complement cell " + id + " misses the terminal vertex");
        pc.layers[dim].push_back(id);
      } else {
        pc.boundary_cells.push_back(id);
      }
    }
  return pc;
}

bool prism_reconstruct(const PrismCells& pc) {
  const SSet& prod = pc.prod.sset;
  std::set<std::string> keep(pc.boundary_cells.begin(), pc.boundary_cells.end());
  SSet cur = subcomplex(prod, keep).sset;
  /* comparison map into the product; starts as the subcomplex inclusion */
  SMap comp;
  std::map<std::string, std::string> inv;  /* product cell -> current cell */
  for (const auto& id : keep) {
    comp.assignment[id] = SimplexRef{{}, id};
    inv[id] = id;
  }
  for (const auto& layer : pc.layers)
    for (const auto& id : layer) {
      int j = prod.dim_of(id);
      SSet dj = std_simplex(j);
      PushoutSSet po;
      if (j == 0) {
        po = disjoint_union(cur, dj);
      } else {
        SubSSet bj = boundary(j);
        SMap att;
        for (int r = 0; r < j; ++r)
          for (const auto& c : bj.sset.cells[r]) {
            SimplexRef val = act_monotone(prod, SimplexRef{{}, id}, parse_chain(c));
            auto it = inv.find(val.base);
            if (it == inv.end()) return false;  /* face not yet attached */
            att.assignment[c] = SimplexRef{val.deg, it->second};
          }
        po = pushout_mono(bj.sset, cur, dj, att, bj.incl);
      }
      SMap comp2;
      std::map<std::string, std::string> inv2;
      for (const auto& kv : comp.assignment) {
        SimplexRef img = po.inj1.at(kv.first);
        if (!img.deg.empty()) return false;  /* gluing must stay injective */
        comp2.assignment[img.base] = kv.second;
        inv2[kv.second.base] = img.base;
      }
      SimplexRef timg = po.inj2.at(top_ref(j).base);
      if (!timg.deg.empty() || comp2.assignment.count(timg.base)) return false;
      comp2.assignment[timg.base] = SimplexRef{{}, id};
      inv2[id] = timg.base;
      cur = po.sset;
      comp = comp2;
      inv = inv2;
    }
  validate_smap(cur, prod, comp);
  return smap_iso(cur, prod, comp);
}

RinsSquare rins_square(const NerveFib& fa, const NerveFib& fb, const SMap& D1, const SMap& D2,
                       int m) {
  if (m < 1) fail("rins square: family dimension must be at least 1");
  if (fa.k != fb.k) fail("rins square: truncation levels differ");
  RinsSquare sq;
  sq.m = m;
  sq.k = fa.k;
  sq.fa = fa;
  sq.fb = fb;
  SSet bnd = boundary(m).sset;
  SSet sx = std_simplex(m);
  sq.powb1 = truncated_hom(bnd, fb.E, sq.k);
  sq.powb2 = truncated_hom(bnd, fb.B, sq.k);
  sq.pows1 = truncated_hom(sx, fb.E, sq.k);
  sq.pows2 = truncated_hom(sx, fb.B, sq.k);
  sq.restrict1 = hom_precompose(sx, bnd, fb.E, sq.pows1, sq.powb1, boundary(m).incl);
  sq.restrict2 = hom_precompose(sx, bnd, fb.B, sq.pows2, sq.powb2, boundary(m).incl);
  sq.D1 = D1;
  sq.D2 = D2;
  validate_smap(fa.E, sq.powb1.hom, D1);
  validate_smap(fa.B, sq.powb2.hom, D2);
  SMap bpow = hom_postcompose(bnd, fb.E, fb.B, sq.powb1, sq.powb2, fb.p);
  if (!(compose(sq.powb1.hom, sq.powb2.hom, bpow, D1) == compose(fa.E, sq.powb2.hom, D2, fa.p)))
    fail("rins square: the family does not commute with the verticals");
  sq.r1 = pullback(fa.E, sq.pows1.hom, sq.powb1.hom, D1, sq.restrict1);
  sq.r2 = pullback(fa.B, sq.pows2.hom, sq.powb2.hom, D2, sq.restrict2);
  sq.p1 = sq.r1.proj1;
  sq.phi1 = sq.r1.proj2;
  sq.p2 = sq.r2.proj1;
  sq.phi2 = sq.r2.proj2;
  SMap bpows = hom_postcompose(sx, fb.E, fb.B, sq.pows1, sq.pows2, fb.p);
  for (int dim = 0; dim <= sq.r1.sset.top_dim; ++dim)
    for (const auto& id : sq.r1.sset.cells[dim]) {
      const auto& pr = sq.r1.parts.at(id);
      PairNF nf = normalize_pair(fa.p.apply(fa.B, pr.first),
                                 bpows.apply(sq.pows2.hom, pr.second));
      SimplexRef ref{nf.deg, pair_id(nf.a, nf.b)};
      if (!sq.r2.sset.ref_valid(ref)) fail("rins square: vertical image missing for " + id);
      sq.vert.assignment[id] = ref;
    }
  validate_smap(sq.r1.sset, sq.r2.sset, sq.vert);
  return sq;
}

RinsSquare rins_square_edges(const NerveFib& fa, const NerveFib& fb, const SMap& f1,
                             const SMap& f2, const SMap& g1, const SMap& g2) {
  validate_smap(fa.E, fb.E, f1);
  validate_smap(fa.B, fb.B, f2);
  validate_smap(fa.E, fb.E, g1);
  validate_smap(fa.B, fb.B, g2);
  if (!(compose(fb.E, fb.B, fb.p, f1) == compose(fa.E, fb.B, f2, fa.p)))
    fail("rins square: the f legs do not commute with the verticals");
  if (!(compose(fb.E, fb.B, fb.p, g1) == compose(fa.E, fb.B, g2, fa.p)))
    fail("rins square: the g legs do not commute with the verticals");
  SSet bnd = boundary(1).sset;
  HomSSet powb1 = truncated_hom(bnd, fb.E, fa.k);
  HomSSet powb2 = truncated_hom(bnd, fb.B, fa.k);
  SMap D1 = edge_transpose(fa.E, fb.E, powb1, f1, g1);
  SMap D2 = edge_transpose(fa.B, fb.B, powb2, f2, g2);
  return rins_square(fa, fb, D1, D2, 1);
}

RinsLiftResult solve_rins_lift(const RinsSquare& sq, const RinsLiftProblem& pr) {
  const int n = pr.n;
  const int m = sq.m;
  if (n < 0) fail("rins lift: negative dimension");
  if (n + m > sq.k) fail("rins lift: the prism dimension exceeds the truncation level");
  const SSet& A1 = sq.fa.E;
  const SSet& A2 = sq.fa.B;
  const SSet& B1 = sq.fb.E;
  const SSet& B2 = sq.fb.B;
  SSet dn = std_simplex(n);
  SSet bn = boundary(n).sset;
  validate_smap(bn, sq.r1.sset, pr.g);
  validate_smap(dn, A1, pr.a1);
  validate_smap(dn, sq.r2.sset, pr.d);
  for (const auto& kv : pr.g.assignment) {
    SimplexRef c{{}, kv.first};
    if (!(sq.p1.apply(A1, kv.second) == pr.a1.apply(A1, c)))
      fail("rins lift: the boundary data does not project to the base path");
    if (!(sq.vert.apply(sq.r2.sset, kv.second) == pr.d.apply(sq.r2.sset, c)))
      fail("rins lift: the boundary data does not map to the target data");
  }
  if (!(compose(A1, A2, sq.fa.p, pr.a1) == compose(sq.r2.sset, A2, sq.p2, pr.d)))
    fail("rins lift: base path and target disagree under the projections");

  PrismCells pc = prism_complement_cells(n, m);
  const SSet& PS = pc.prod.sset;
  SSet sxm = std_simplex(m);
  SSet bnm = boundary(m).sset;

  /* boundary part of the filler, glued from the two transposed prescriptions */
  SMap h;
  for (const auto& id : pc.boundary_cells) {
    const auto& parts = pc.prod.parts.at(id);
    const SimplexRef& u = parts.first;
    const SimplexRef& v = parts.second;
    std::optional<SimplexRef> val1, val2;
    if (!chain_onto(v, m)) {
      SimplexRef w = sq.D1.apply(sq.powb1.hom, pr.a1.apply(A1, u));
      val1 = eval_hom_at(sq.powb1, bnm, B1, w, v);
    }
    if (!chain_onto(u, n)) {
      SimplexRef w = sq.phi1.apply(sq.pows1.hom, pr.g.apply(sq.r1.sset, u));
      val2 = eval_hom_at(sq.pows1, sxm, B1, w, v);
    }
    if (val1 && val2 && !(*val1 == *val2))
      fail("rins lift: the two boundary prescriptions disagree at " + id);
    h.assignment[id] = val1 ? *val1 : *val2;
  }

  /* extend over the complement cells in attachment order */
  for (const auto& layer : pc.layers)
    for (const auto& id : layer) {
      int j = PS.dim_of(id);
      const auto& parts = pc.prod.parts.at(id);
      std::vector<SimplexRef> fvals;
      for (int i = 0; i <= j; ++i) fvals.push_back(h.apply(B1, PS.face(SimplexRef{{}, id}, i)));
      SimplexRef target = eval_hom_at(
          sq.pows2, sxm, B2,
          sq.phi2.apply(sq.pows2.hom, pr.d.apply(sq.r2.sset, parts.first)), parts.second);
      std::optional<SimplexRef> best;
      for (const SimplexRef& w : B1.all_refs(j)) {
        if (!(sq.fb.p.apply(B2, w) == target)) continue;
        bool ok = true;
        for (int i = 0; i <= j && ok; ++i)
          if (!(B1.face(w, i) == fvals[i])) ok = false;
        if (ok && (!best || w < *best)) best = w;
      }
      if (!best) return RinsLiftResult{false, {}, id};
      h.assignment[id] = *best;
    }
  validate_smap(PS, B1, h);

  /* assemble the lift through the pullback: base path and curried filler */
  SMap l;
  for (int r = 0; r <= n; ++r)
    for (const auto& c : dn.cells[r]) {
      SMap mc;
      SSet dr = std_simplex(r);
      const ProductSSet& P = sq.pows1.dom_prod[r];
      for (int s = 0; s <= P.sset.top_dim; ++s)
        for (const auto& cid : P.sset.cells[s]) {
          const auto& q = P.parts.at(cid);
          SimplexRef uu = act_monotone(dn, SimplexRef{{}, c}, monotone_of_ref(dr, q.first));
          mc.assignment[cid] = h.apply(B1, pc.prod.pair_ref(dn, sxm, uu, q.second));
        }
      PairNF nf = normalize_pair(pr.a1.at(c), hom_ref_of_map(sq.pows1, sxm, B1, mc, r));
      SimplexRef lr{nf.deg, pair_id(nf.a, nf.b)};
      if (!sq.r1.sset.ref_valid(lr)) return RinsLiftResult{false, {}, "pullback: " + c};
      l.assignment[c] = lr;
    }
  validate_smap(dn, sq.r1.sset, l);

  /* exact verification of the three lift equations */
  for (const auto& kv : pr.g.assignment)
    if (!(l.apply(sq.r1.sset, SimplexRef{{}, kv.first}) == kv.second))
      fail("rins lift: the lift does not restrict to the boundary data");
  if (!(compose(sq.r1.sset, A1, sq.p1, l) == pr.a1))
    fail("rins lift: the lift does not project to the base path");
  if (!(compose(sq.r1.sset, sq.r2.sset, sq.vert, l) == pr.d))
    fail("rins lift: the lift does not map to the target data");
  return RinsLiftResult{true, l, ""};
}

RinsLaliReport rins_lali_instance_check(const RinsSquare& sq, int n_max) {
  RinsLaliReport rep;
  const SSet& R1 = sq.r1.sset;
  const SSet& R2 = sq.r2.sset;
  auto note = [&](const std::string& w) {
    if (rep.witness.empty()) rep.witness = w;
  };

  std::set<std::string> universal;
  for (const auto& x : R1.cells[0])
    if (is_universal_element(R1, R2, sq.vert, x, n_max)) universal.insert(x);
  rep.lali = true;
  for (const auto& y : R2.cells[0]) {
    bool found = false;
    for (const auto& x : universal)
      if (sq.vert.at(x).base == y) found = true;
    if (!found) {
      rep.lali = false;
      note("no universal vertex over " + y);
    }
  }

  HtpyCat h1 = homotopy_cat(R1);
  HtpyCat h2 = homotopy_cat(R2);
  CFunctor F = hfunctor(R1, R2, sq.vert, h1, h2);
  auto adjr = is_lali(h1.cat, h2.cat, F);
  rep.oracle = adjr.has_value();

  /* universal vertices of the base fibration, for the solver anchors and the
     projection comparison */
  std::set<std::string> base_universal;
  for (const auto& a : sq.fa.E.cells[0])
    if (is_universal_element(sq.fa.E, sq.fa.B, sq.fa.p, a, n_max)) base_universal.insert(a);

  rep.solver_ok = true;
  rep.solver_match = true;
  for (const auto& y : R2.cells[0]) {
    std::string a2 = sq.p2.at(y).base;
    std::optional<std::string> anchor;
    for (const auto& a : base_universal)
      if (sq.fa.p.at(a).base == a2) {
        anchor = a;
        break;
      }
    if (!anchor) {
      rep.solver_ok = false;
      note("no universal base vertex over " + a2);
      continue;
    }
    RinsLiftProblem lp;
    lp.n = 0;
    lp.a1.assignment["0"] = SimplexRef{{}, *anchor};
    lp.d.assignment["0"] = SimplexRef{{}, y};
    RinsLiftResult lr = solve_rins_lift(sq, lp);
    if (!lr.found) {
      rep.solver_ok = false;
      note("no solver lift over " + y + " at " + lr.witness);
      continue;
    }
    std::string xv = lr.l.at("0").base;
    if (!universal.count(xv)) {
      rep.solver_match = false;
      note("solver vertex is not universal: " + xv);
    }
  }

  rep.p_preserves = true;
  rep.p_detects = true;
  for (const auto& x : R1.cells[0]) {
    bool xu = universal.count(x) > 0;
    bool pu = base_universal.count(sq.p1.at(x).base) > 0;
    if (xu && !pu) {
      rep.p_preserves = false;
      note("projection drops universality at " + x);
    }
    if (pu && !xu) {
      rep.p_detects = false;
      note("projection fails to detect universality at " + x);
    }
  }

  HtpyCat ha1 = homotopy_cat(sq.fa.E);
  HtpyCat ha2 = homotopy_cat(sq.fa.B);
  CFunctor PA = hfunctor(sq.fa.E, sq.fa.B, sq.fa.p, ha1, ha2);
  CFunctor hp1 = hfunctor(R1, sq.fa.E, sq.p1, h1, ha1);
  CFunctor hp2 = hfunctor(R2, sq.fa.B, sq.p2, h2, ha2);
  auto adja = is_lali(ha1.cat, ha2.cat, PA);
  if (adjr && adja) {
    CNat mate = mate_of_square(h1.cat, h2.cat, ha1.cat, ha2.cat, hp1, hp2, *adjr, *adja);
    rep.p_oracle = mate_is_iso(ha1.cat, mate);
    rep.p_agrees = rep.p_preserves == rep.p_oracle;
  } else {
    rep.p_agrees = true;
  }
  return rep;
}

}  // namespace rigged
