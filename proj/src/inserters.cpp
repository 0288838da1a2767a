#include "rigged/inserters.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace rigged {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

/* Conjugate of a ref over a standard-simplex subcomplex under vertex
   reversal j |-> amb - j: chains reverse and complement, degeneracy entries
   complement within the total dimension. */
SimplexRef rev_ref(const SSet& S, const SimplexRef& r, int amb) {
  int d = S.ref_dim(r);
  std::vector<int> w;
  for (int e : r.deg) w.push_back(d - 1 - e);
  std::sort(w.begin(), w.end(), std::greater<int>());
  std::vector<int> ch = parse_chain(r.base), rc;
  for (auto it = ch.rbegin(); it != ch.rend(); ++it) rc.push_back(amb - *it);
  return {w, chain_id(rc)};
}

ESSet marked_simplex(int n, int mark) {
  ESSet out;
  out.loose = std_simplex(n);
  out.tight_vertices.insert(std::to_string(mark));
  return out;
}

ESSet marked_boundary(int n, int mark) {
  ESSet out;
  out.loose = boundary(n).sset;
  if (n >= 1) out.tight_vertices.insert(std::to_string(mark));
  return out;
}

ESSet truncate_esset(const ESSet& S, int k) {
  ESSet out;
  out.loose = truncate(S.loose, k);
  out.tight_vertices = S.tight_vertices;
  return out;
}

SMap restrict_smap(const SSet& dom, const SMap& f) {
  SMap out;
  for (auto& lv : dom.cells)
    for (auto& id : lv) out.assignment[id] = f.at(id);
  return out;
}

}  // namespace

EHom rigged_power_simplex(const ESSet& T, int n, int k, bool terminal) {
  return ehom(marked_simplex(n, terminal ? n : 0), T, k);
}

EHom rigged_power_boundary(const ESSet& T, int n, int k, bool terminal) {
  return ehom(marked_boundary(n, terminal ? n : 0), T, k);
}

void RiggedDiagram::validate() const {
  S.validate();
  T.validate();
  validate_smap(dom.sset, T.loose, Dbar);
  validate_smap(S.loose, pow.hom.hom, D.map);
  validate_emap(S, pow.esset, D);
  if (n >= 1 && !emap_tight(S, T, diagram_leg(*this, mark())))
    fail("rins: rigged leg is loose");
}

RiggedDiagram rigged_diagram(const ESSet& S, const ESSet& T, int n, int k, const SMap& Dbar,
                             bool terminal) {
  if (n < 0) fail("rins: negative dimension");
  if (k < 0) fail("rins: negative truncation");
  S.validate();
  T.validate();
  if (S.loose.top_dim > k) fail("rins: source exceeds truncation");
  RiggedDiagram d;
  d.S = S;
  d.T = T;
  d.n = n;
  d.k = k;
  d.terminal = terminal;
  d.bnd = boundary(n).sset;
  d.dom = product(d.bnd, S.loose);
  d.Dbar = Dbar;
  validate_smap(d.dom.sset, T.loose, Dbar);
  d.pow = rigged_power_boundary(T, n, k, terminal);
  SMap tr;
  for (int dd = 0; dd < (int)S.loose.cells.size(); ++dd) {
    SSet Dd = std_simplex(dd);
    const ProductSSet& P = d.pow.hom.dom_prod[dd];
    for (auto& sid : S.loose.cells[dd]) {
      SMap ms;
      for (auto& lv : P.sset.cells)
        for (auto& pid : lv) {
          auto& pr = P.parts.at(pid);
          SimplexRef sa =
              act_by_monotone(S.loose, SimplexRef{{}, sid}, monotone_of_ref(Dd, pr.first));
          ms.assignment[pid] =
              Dbar.apply(T.loose, d.dom.pair_ref(d.bnd, S.loose, pr.second, sa));
        }
      tr.assignment[sid] = hom_ref_of_map(d.pow.hom, d.bnd, T.loose, ms, dd);
    }
  }
  d.D = emap(S, d.pow.esset, std::move(tr));
  if (n >= 1 && !emap_tight(S, T, diagram_leg(d, d.mark())))
    fail("rins: rigged leg is loose");
  return d;
}

SMap diagram_leg(const RiggedDiagram& d, int vertex) {
  if (d.n < 1) fail("rins: no boundary vertex at dimension zero");
  std::string vid = std::to_string(vertex);
  SMap out;
  for (int dd = 0; dd < (int)d.S.loose.cells.size(); ++dd)
    for (auto& sid : d.S.loose.cells[dd])
      out.assignment[sid] = d.Dbar.apply(
          d.T.loose,
          d.dom.pair_ref(d.bnd, d.S.loose, deg_vertex_ref(vid, dd), SimplexRef{{}, sid}));
  return out;
}

RinsResult rins_pullback(const RiggedDiagram& d) {
  RinsResult out;
  out.pow_sx = rigged_power_simplex(d.T, d.n, d.k, d.terminal);
  SSet sx = std_simplex(d.n);
  out.restrict_bnd =
      hom_precompose(sx, d.bnd, d.T.loose, out.pow_sx.hom, d.pow.hom, boundary(d.n).incl);
  EMap rmap = emap(out.pow_sx.esset, d.pow.esset, out.restrict_bnd);
  EPullback pb = epullback(d.S, out.pow_sx.esset, d.pow.esset, d.D, rmap);
  out.rins = truncate_esset(pb.esset, d.k);
  out.p = emap(out.rins, d.S, restrict_smap(out.rins.loose, pb.proj1.map));
  out.cone = emap(out.rins, out.pow_sx.esset, restrict_smap(out.rins.loose, pb.proj2.map));
  return out;
}

EMap rins_ev(const RiggedDiagram& d, const RinsResult& r, int vertex) {
  SMap ev = ev_vertex(r.pow_sx.hom, std_simplex(d.n), d.T.loose, std::to_string(vertex));
  return emap(r.rins, d.T, compose(r.pow_sx.hom.hom, d.T.loose, ev, r.cone.map));
}

bool rins_reflects(const RiggedDiagram& d, const RinsResult& r) {
  if (r.rins.loose.cells.empty()) return true;
  SMap ev0;
  if (d.n == 0) ev0 = rins_ev(d, r, 0).map;
  for (auto& v : r.rins.loose.cells[0]) {
    bool tv = r.rins.tight_vertex(v);
    bool expect = d.S.tight_vertex(r.p.map.at(v).base);
    if (d.n == 0) expect = expect && d.T.tight_vertex(ev0.at(v).base);
    if (tv != expect) return false;
  }
  return true;
}

ECat rigged_shape(int n, int k, bool terminal) {
  ECat D = dcat_rigged(n, k);
  if (!terminal && n >= 1) D.hom[{"x", "y"}].tight_vertices = {"0"};
  return D;
}

EWeight rigged_weight(int n, int k, bool terminal) {
  EWeight W = weight_terminal_rigged(n, k);
  if (!terminal && n >= 1) W.ob["y"].tight_vertices = {"0"};
  return W;
}

EWeight diagram_weight(const RiggedDiagram& d) {
  EWeight F;
  F.ob["x"] = d.S;
  F.ob["y"] = d.T;
  EAction keep{[](const SimplexRef&, const SimplexRef& w) {
    return std::optional<SimplexRef>(w);
  }};
  EAction never{[](const SimplexRef&, const SimplexRef&) {
    return std::optional<SimplexRef>();
  }};
  F.act[{"x", "x"}] = keep;
  F.act[{"y", "y"}] = keep;
  F.act[{"y", "x"}] = never;
  F.act[{"x", "y"}] = action_from_smap(std::make_shared<const ProductSSet>(d.dom),
                                       std::make_shared<const SSet>(d.bnd),
                                       std::make_shared<const SSet>(d.S.loose),
                                       std::make_shared<const SMap>(d.Dbar));
  return F;
}

RinsWeighted rins_weighted(const RiggedDiagram& d, size_t budget) {
  RinsWeighted out;
  out.shape = rigged_shape(d.n, d.k, d.terminal);
  out.weight = rigged_weight(d.n, d.k, d.terminal);
  out.diagram = diagram_weight(d);
  out.shape.validate();
  out.weight.validate(out.shape);
  out.diagram.validate(out.shape);
  out.lim = weighted_limit(out.shape, out.weight, out.diagram, budget);
  out.p = limit_projection(out.lim, out.weight, out.diagram, "x", "0");
  EHom psx = rigged_power_simplex(d.T, d.n, d.k, d.terminal);
  SSet sx = std_simplex(d.n);
  for (int m = 0; m < (int)out.lim.families.size(); ++m)
    for (auto& [cell, fam] : out.lim.families[m])
      out.cone.assignment[cell] =
          hom_ref_of_map(psx.hom, sx, d.T.loose, fam.comp.at("y"), m);
  return out;
}

RinsAgreement rins_agreement(const RiggedDiagram& d, size_t budget) {
  RinsAgreement out;
  RinsResult rp = rins_pullback(d);
  RinsWeighted rw = rins_weighted(d, budget);
  SMap phi;
  for (int m = 0; m < (int)rw.lim.families.size(); ++m)
    for (auto& [cell, fam] : rw.lim.families[m]) {
      PairNF nf = normalize_pair(rw.p.map.at(cell), rw.cone.at(cell));
      SimplexRef pr{nf.deg, pair_id(nf.a, nf.b)};
      if (!rp.rins.loose.ref_valid(pr)) {
        out.witness = "no pullback cell matches family " + cell;
        return out;
      }
      phi.assignment[cell] = pr;
    }
  out.iso = smap_iso(rw.lim.limit.loose, rp.rins.loose, phi);
  if (!out.iso) {
    out.witness = "comparison map is not an isomorphism";
    return out;
  }
  out.tights_match =
      rw.lim.limit.tight_vertices.size() == rp.rins.tight_vertices.size();
  for (auto& v : rw.lim.limit.tight_vertices)
    if (!rp.rins.tight_vertex(phi.at(v).base)) out.tights_match = false;
  if (!out.tights_match) out.witness = "tight vertex sets differ";
  out.proj_match = compose(rw.lim.limit.loose, d.S.loose, rp.p.map, phi) == rw.p.map &&
                   rp.p.tight == rw.p.tight;
  if (!out.proj_match) out.witness = "projections differ";
  out.cone_match =
      compose(rw.lim.limit.loose, rp.pow_sx.hom.hom, rp.cone.map, phi) == rw.cone;
  if (!out.cone_match) out.witness = "cones differ";
  return out;
}

RiggedDiagram co_diagram(const RiggedDiagram& d) {
  ESSet Sop = eopposite(d.S), Top = eopposite(d.T);
  SMap Dbar2;
  for (auto& lv : d.dom.sset.cells)
    for (auto& id : lv) {
      auto& pr = d.dom.parts.at(id);
      SimplexRef u = rev_ref(d.bnd, pr.first, d.n);
      SimplexRef s = opposite_ref(d.S.loose, pr.second);
      Dbar2.assignment[id] = opposite_ref(
          d.T.loose, d.Dbar.apply(d.T.loose, d.dom.pair_ref(d.bnd, d.S.loose, u, s)));
    }
  return rigged_diagram(Sop, Top, d.n, d.k, Dbar2, !d.terminal);
}

RinsInitialReport rins_initial(const RiggedDiagram& d, size_t budget) {
  RinsInitialReport out;
  out.direct = rins_pullback(d);
  RiggedDiagram cd = co_diagram(d);
  RinsResult rc = rins_pullback(cd);
  out.dual = eopposite(rc.rins);
  SSet sx = std_simplex(d.n);
  SMap phi;
  try {
    for (auto& lv : rc.rins.loose.cells)
      for (auto& id : lv) {
        SimplexRef su = opposite_ref(cd.S.loose, rc.p.map.at(id));
        SimplexRef h = rc.cone.map.at(id);
        int m = rc.pow_sx.hom.hom.ref_dim(h);
        SMap hm = hom_map_of_ref(rc.pow_sx.hom, sx, cd.T.loose, h);
        SSet Dm = std_simplex(m);
        const ProductSSet& P = out.direct.pow_sx.hom.dom_prod[m];
        SMap cm;
        for (auto& plv : P.sset.cells)
          for (auto& pid : plv) {
            auto& pp = P.parts.at(pid);
            cm.assignment[pid] = opposite_ref(
                cd.T.loose,
                hm.apply(cd.T.loose, P.pair_ref(Dm, sx, rev_ref(Dm, pp.first, m),
                                                rev_ref(sx, pp.second, d.n))));
          }
        SimplexRef hv = hom_ref_of_map(out.direct.pow_sx.hom, sx, d.T.loose, cm, m);
        PairNF nf = normalize_pair(su, hv);
        SimplexRef pr{nf.deg, pair_id(nf.a, nf.b)};
        if (!out.direct.rins.loose.ref_valid(pr)) fail("no matching direct cell");
        phi.assignment[id] = pr;
      }
    out.op_match = smap_iso(out.dual.loose, out.direct.rins.loose, phi);
  } catch (const std::exception&) {
    out.op_match = false;
  }
  if (out.op_match) {
    out.tights_match = out.dual.tight_vertices.size() == out.direct.rins.tight_vertices.size();
    for (auto& v : out.dual.tight_vertices)
      if (!out.direct.rins.tight_vertex(phi.at(v).base)) out.tights_match = false;
    out.proj_match = compose(out.dual.loose, d.S.loose, out.direct.p.map, phi) ==
                     opposite_smap(rc.rins.loose, rc.p.map, cd.S.loose);
  }
  out.duality = duality_limit_check(rigged_shape(d.n, d.k, d.terminal),
                                    rigged_weight(d.n, d.k, d.terminal), diagram_weight(d),
                                    budget);
  return out;
}

RiggedDiagram product_diagram(const ESSet& S, const ESSet& T, int k) {
  return rigged_diagram(S, T, 0, k, SMap{}, true);
}

RiggedDiagram inserter_diagram(const ESSet& S, const ESSet& T, const SMap& f, const SMap& g,
                               int k) {
  validate_smap(S.loose, T.loose, f);
  validate_smap(S.loose, T.loose, g);
  SSet bnd = boundary(1).sset;
  ProductSSet dom = product(bnd, S.loose);
  SMap Dbar;
  for (auto& lv : dom.sset.cells)
    for (auto& id : lv) {
      auto& pr = dom.parts.at(id);
      const SMap& leg = pr.first.base == "0" ? f : g;
      Dbar.assignment[id] = leg.apply(T.loose, pr.second);
    }
  return rigged_diagram(S, T, 1, k, Dbar, true);
}

CommaData comma_diagram(const ESSet& A, const ESSet& B, const ESSet& T, const SMap& f,
                        const SMap& g, int k) {
  CommaData out;
  out.ab = eproduct(A, B);
  SMap legf = compose(A.loose, T.loose, f, out.ab.prod.proj1);
  SMap legg = compose(B.loose, T.loose, g, out.ab.prod.proj2);
  out.d = inserter_diagram(out.ab.esset, T, legf, legg, k);
  return out;
}

RiggedDiagram equifier_diagram(const ESSet& S, const ESSet& T, const SMap& fm, const SMap& gm,
                               int k) {
  SSet d1 = std_simplex(1);
  ProductSSet P1 = product(d1, S.loose);
  validate_smap(P1.sset, T.loose, fm);
  validate_smap(P1.sset, T.loose, gm);
  auto edge_end = [&](const SMap& m, const std::string& v) {
    SMap out;
    for (int dd = 0; dd < (int)S.loose.cells.size(); ++dd)
      for (auto& sid : S.loose.cells[dd])
        out.assignment[sid] = m.apply(
            T.loose, P1.pair_ref(d1, S.loose, deg_vertex_ref(v, dd), SimplexRef{{}, sid}));
    return out;
  };
  SMap src = edge_end(fm, "0");
  if (!(src == edge_end(gm, "0"))) fail("equifier: source legs differ");
  SMap tgt = edge_end(fm, "1");
  if (!(tgt == edge_end(gm, "1"))) fail("equifier: target legs differ");
  SSet bnd = boundary(2).sset;
  ProductSSet dom = product(bnd, S.loose);
  auto relab = [](const SimplexRef& r, int lo) {
    std::vector<int> ch = parse_chain(r.base), mapped;
    for (int v : ch) mapped.push_back(v == lo ? 0 : 1);
    return SimplexRef{r.deg, chain_id(mapped)};
  };
  SMap Dbar;
  for (auto& lv : dom.sset.cells)
    for (auto& id : lv) {
      auto& pr = dom.parts.at(id);
      std::vector<int> vals = monotone_of_ref(bnd, pr.first);
      bool has1 = std::count(vals.begin(), vals.end(), 1) > 0;
      int hi = *std::max_element(vals.begin(), vals.end());
      if (hi <= 1)
        Dbar.assignment[id] =
            fm.apply(T.loose, P1.pair_ref(d1, S.loose, relab(pr.first, 0), pr.second));
      else if (!has1)
        Dbar.assignment[id] =
            gm.apply(T.loose, P1.pair_ref(d1, S.loose, relab(pr.first, 0), pr.second));
      else
        Dbar.assignment[id] = tgt.apply(T.loose, pr.second);
    }
  return rigged_diagram(S, T, 2, k, Dbar, true);
}

SpecializedRins specialize_product(const ESSet& S, const ESSet& T, int k) {
  SpecializedRins out;
  out.d = product_diagram(S, T, k);
  out.r = rins_pullback(out.d);
  out.p1 = out.r.p;
  out.p2 = rins_ev(out.d, out.r, 0);
  return out;
}

SpecializedRins specialize_inserter(const ESSet& S, const ESSet& T, const SMap& f, const SMap& g,
                                    int k) {
  SpecializedRins out;
  out.d = inserter_diagram(S, T, f, g, k);
  out.r = rins_pullback(out.d);
  out.p1 = out.r.p;
  out.p2 = rins_ev(out.d, out.r, 1);
  return out;
}

SpecializedRins specialize_comma(const ESSet& A, const ESSet& B, const ESSet& T, const SMap& f,
                                 const SMap& g, int k) {
  CommaData cd = comma_diagram(A, B, T, f, g, k);
  SpecializedRins out;
  out.d = cd.d;
  out.r = rins_pullback(out.d);
  out.p1 = ecompose(out.r.rins, cd.ab.esset, A, cd.ab.proj1, out.r.p);
  out.p2 = ecompose(out.r.rins, cd.ab.esset, B, cd.ab.proj2, out.r.p);
  return out;
}

SpecializedRins specialize_equifier(const ESSet& S, const ESSet& T, const SMap& fm,
                                    const SMap& gm, int k) {
  SpecializedRins out;
  out.d = equifier_diagram(S, T, fm, gm, k);
  out.r = rins_pullback(out.d);
  out.p1 = out.r.p;
  out.p2 = rins_ev(out.d, out.r, 2);
  return out;
}

bool EmChainReport::ok() const {
  if (stages.size() != 3 || !stage_counts_ok || !final_matches_oracle) return false;
  for (auto& s : stages)
    if (!s.p_tight || !s.p_reflects) return false;
  return true;
}

EmChainReport em_chain_demo(const StrictMonad& M, int k) {
  if (k < 2) fail("algebra tower: truncation level below 2 cannot carry the equifier stages");
  validate_strict_monad(M);
  EmChainReport rep;
  const FinCat& C = M.C;
  SSet NC = nerve(C, k);
  ESSet A = chordate(NC);

  EmChainStage st1;
  st1.name = "inserter";
  st1.d = inserter_diagram(A, A, nerve_map(C, C, M.T, k), id_map(NC), k);
  st1.r = rins_pullback(st1.d);
  st1.vertex_count = st1.r.rins.loose.cell_count(0);
  st1.p_tight = st1.r.p.tight;
  st1.p_reflects = rins_reflects(st1.d, st1.r);

  size_t pair_count = 0;
  for (auto& a : C.objects) pair_count += C.hom(M.T.ob.at(a), a).size();
  rep.stage_counts_ok = st1.vertex_count == pair_count;

  /* read the carrier object and the structure edge off a stage-one vertex */
  SSet sx1 = std_simplex(1);
  auto obj_of = [&](const SimplexRef& v) { return st1.r.p.map.apply(NC, v).base; };
  auto xi_of = [&](const SimplexRef& v) {
    SimplexRef cr = st1.r.cone.map.apply(st1.r.pow_sx.hom.hom, v);
    SMap vm = st1.r.pow_sx.hom.vertex_map(sx1, NC, cr.base);
    return nerve_expand_ref(C, vm.at("0.1"), 1)[0];
  };

  /* triangle-shaped family over a base: tier 0 carries the tier0_power-fold
     image of the projected chain, tiers 1 and 2 the chain itself, with the
     chosen 2-cell components inserted at tier jumps */
  auto build_stage =
      [&](const ESSet& Sb, const std::function<SimplexRef(const SimplexRef&)>& proj,
          const std::function<std::string(const SimplexRef&)>& xi_at, int tier0_power,
          const std::function<std::string(const std::string&, const std::string&)>& jump01,
          const std::function<std::string(const std::string&, const std::string&)>& jump02)
      -> RiggedDiagram {
    SSet bnd2 = boundary(2).sset;
    ProductSSet dom = product(bnd2, Sb.loose);
    auto tpow_ob = [&](std::string o, int t) {
      for (int i = 0; i < t; ++i) o = M.T.ob.at(o);
      return o;
    };
    auto tpow_mor = [&](std::string m, int t) {
      for (int i = 0; i < t; ++i) m = M.T.mor.at(m);
      return m;
    };
    SMap Dbar;
    for (auto& lv : dom.sset.cells)
      for (auto& id : lv) {
        auto& pr = dom.parts.at(id);
        int m = dom.sset.dim_of(id);
        std::vector<int> vals = monotone_of_ref(bnd2, pr.first);
        SimplexRef pc = proj(pr.second);
        auto tier = [&](int v) { return v == 0 ? tier0_power : 0; };
        if (m == 0) {
          Dbar.assignment[id] = SimplexRef{{}, tpow_ob(pc.base, tier(vals[0]))};
          continue;
        }
        std::vector<std::string> entries = nerve_expand_ref(C, pc, m);
        std::vector<std::string> obs(m + 1);
        obs[0] = C.dom_of(entries[0]);
        for (int j = 1; j <= m; ++j) obs[j] = C.cod_of(entries[j - 1]);
        std::vector<std::string> out_entries;
        for (int j = 1; j <= m; ++j) {
          std::string e = tpow_mor(entries[j - 1], tier(vals[j]));
          if (vals[j - 1] != vals[j] && vals[j - 1] == 0) {
            std::string x = xi_at(Sb.loose.vertex(pr.second, j - 1));
            std::string gam =
                vals[j] == 1 ? jump01(obs[j - 1], x) : jump02(obs[j - 1], x);
            if (!gam.empty()) e = C.compose(e, gam);
          }
          out_entries.push_back(e);
        }
        Dbar.assignment[id] = nerve_chain_ref(C, out_entries);
      }
    return rigged_diagram(Sb, A, 2, k, Dbar, true);
  };

  EmChainStage st2;
  st2.name = "associativity";
  st2.d = build_stage(
      st1.r.rins, [&](const SimplexRef& r) { return st1.r.p.map.apply(NC, r); }, xi_of, 2,
      [&](const std::string&, const std::string& x) {
        return C.compose(x, M.T.mor.at(x));
      },
      [&](const std::string& o, const std::string& x) {
        return C.compose(x, M.mult.comp.at(o));
      });
  st2.r = rins_pullback(st2.d);
  st2.vertex_count = st2.r.rins.loose.cell_count(0);
  st2.p_tight = st2.r.p.tight;
  st2.p_reflects = rins_reflects(st2.d, st2.r);

  auto down1 = [&](const SimplexRef& r) { return st2.r.p.map.apply(st1.r.rins.loose, r); };
  EmChainStage st3;
  st3.name = "unit";
  st3.d = build_stage(
      st2.r.rins, [&](const SimplexRef& r) { return st1.r.p.map.apply(NC, down1(r)); },
      [&](const SimplexRef& v) { return xi_of(down1(v)); }, 0,
      [&](const std::string& o, const std::string& x) {
        return C.compose(x, M.unit.comp.at(o));
      },
      [&](const std::string&, const std::string&) { return std::string(); });
  st3.r = rins_pullback(st3.d);
  st3.vertex_count = st3.r.rins.loose.cell_count(0);
  st3.p_tight = st3.r.p.tight;
  st3.p_reflects = rins_reflects(st3.d, st3.r);

  FinCat E = em_category(M);
  rep.algebra_count = E.objects.size();
  std::set<std::string> want(E.objects.begin(), E.objects.end()), got;
  if (!st3.r.rins.loose.cells.empty())
    for (auto& v : st3.r.rins.loose.cells[0]) {
      SimplexRef u1 = down1(st3.r.p.map.at(v));
      got.insert("(" + obj_of(u1) + "|" + xi_of(u1) + ")");
    }
  rep.final_matches_oracle =
      got == want && got.size() == st3.r.rins.loose.cell_count(0);
  if (!rep.final_matches_oracle) rep.witness = "algebra vertex set mismatch";

  rep.stages.push_back(std::move(st1));
  rep.stages.push_back(std::move(st2));
  rep.stages.push_back(std::move(st3));
  return rep;
}

}  // namespace rigged
