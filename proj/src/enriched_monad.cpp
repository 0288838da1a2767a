#include <algorithm>
#include <sstream>

#include "rigged/enriched.hpp"

namespace rigged {

[[noreturn]] static void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string ordinal_object(int p) { return "[" + std::to_string(p) + "]"; }

std::string ordinal_morphism(int p, int q, const std::vector<int>& values) {
  std::ostringstream os;
  os << p << '>' << q << ':';
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) os << '.';
    os << values[i];
  }
  return os.str();
}

void parse_ordinal_morphism(const std::string& m, int& p, int& q, std::vector<int>& values) {
  size_t gt = m.find('>'), co = m.find(':', gt);
  if (gt == std::string::npos || co == std::string::npos) fail("ordinal morphism: bad id " + m);
  p = std::stoi(m.substr(0, gt));
  q = std::stoi(m.substr(gt + 1, co - gt - 1));
  values.clear();
  std::istringstream is(m.substr(co + 1));
  std::string part;
  while (std::getline(is, part, '.')) values.push_back(std::stoi(part));
  if ((int)values.size() != p + 1) fail("ordinal morphism: wrong arity " + m);
}

static int parse_ordinal_object(const std::string& o) {
  if (o.size() < 3 || o.front() != '[' || o.back() != ']') fail("ordinal object: bad id " + o);
  return std::stoi(o.substr(1, o.size() - 2));
}

FinCat ordinal_fincat(int bound, bool with_empty, bool top_only) {
  if (bound < 0) fail("ordinal category: negative bound");
  FinCat C;
  int lo = (with_empty && !top_only) ? -1 : 0;
  for (int p = lo; p <= bound; ++p) C.add_object(ordinal_object(p));
  for (int p = lo; p <= bound; ++p)
    for (int q = lo; q <= bound; ++q) {
      if (p == -1) {
        C.add_morphism(ordinal_morphism(-1, q, {}), ordinal_object(-1), ordinal_object(q));
        continue;
      }
      if (q == -1) continue;
      std::vector<int> cur;
      std::function<void(int)> rec = [&](int i) {
        if (i == p + 1) {
          if (!top_only || cur.back() == q)
            C.add_morphism(ordinal_morphism(p, q, cur), ordinal_object(p), ordinal_object(q));
          return;
        }
        for (int v = i ? cur.back() : 0; v <= q; ++v) {
          cur.push_back(v);
          rec(i + 1);
          cur.pop_back();
        }
      };
      rec(0);
    }
  for (int p = lo; p <= bound; ++p) {
    std::vector<int> v;
    for (int i = 0; i <= p; ++i) v.push_back(i);
    C.identity[ordinal_object(p)] = ordinal_morphism(p, p, v);
  }
  for (auto& f : C.morphisms)
    for (auto& g : C.morphisms) {
      if (C.cod_of(f) != C.dom_of(g)) continue;
      int p, q, a, b;
      std::vector<int> fv, gv;
      parse_ordinal_morphism(f, p, q, fv);
      parse_ordinal_morphism(g, a, b, gv);
      std::vector<int> hv;
      for (int x : fv) hv.push_back(gv[x]);
      C.comp[{g, f}] = ordinal_morphism(p, b, hv);
    }
  C.sort_all();
  C.validate();
  return C;
}

std::optional<std::string> ordinal_sum_mor(const std::string& f, const std::string& g,
                                           int bound) {
  int p, q, a, b;
  std::vector<int> fv, gv;
  parse_ordinal_morphism(f, p, q, fv);
  parse_ordinal_morphism(g, a, b, gv);
  if (p + a + 1 > bound || q + b + 1 > bound) return std::nullopt;
  std::vector<int> hv;
  for (int x : fv) hv.push_back(x);
  for (int x : gv) hv.push_back(q + 1 + x);
  return ordinal_morphism(p + a + 1, q + b + 1, hv);
}

/* Dimension of a nerve simplex ref: word length plus base chain length. */
static int nerve_dim(const FinCat& C, const SimplexRef& r) {
  int b = 0;
  if (!(r.base.find(';') == std::string::npos && C.has_object(r.base)))
    b = 1 + (int)std::count(r.base.begin(), r.base.end(), ';');
  return b + (int)r.deg.size();
}

/* Levelwise ordinal sum of two equidimensional nerve refs, identities restored
   at the degenerate slots; empty result once a level leaves the bound. */
static std::optional<SimplexRef> sum_refs(const FinCat& dl, const FinCat& dr,
                                          const FinCat& dout, int bound, const SimplexRef& u,
                                          const SimplexRef& w) {
  int n = nerve_dim(dl, u);
  if (nerve_dim(dr, w) != n) fail("ordinal sum: dimension mismatch");
  if (n == 0) {
    int s = parse_ordinal_object(u.base) + parse_ordinal_object(w.base) + 1;
    if (s > bound) return std::nullopt;
    return SimplexRef{{}, ordinal_object(s)};
  }
  std::vector<std::string> eu = nerve_expand_ref(dl, u, n);
  std::vector<std::string> ew = nerve_expand_ref(dr, w, n);
  std::vector<std::string> entries;
  for (int i = 0; i < n; ++i) {
    auto s = ordinal_sum_mor(eu[i], ew[i], bound);
    if (!s) return std::nullopt;
    entries.push_back(*s);
  }
  return nerve_chain_ref(dout, entries);
}

MndECat mnd_ecat(int k, int max_ordinal) {
  MndECat M;
  M.bound = max_ordinal;
  M.k = k;
  M.delta = ordinal_fincat(max_ordinal, true, false);
  M.cat.k = k;
  M.cat.objects = {"+"};
  ESSet h;
  h.loose = nerve(M.delta, k);
  h.tight_vertices = {ordinal_object(-1)};
  M.cat.hom[{"+", "+"}] = h;
  M.cat.id["+"] = ordinal_object(-1);
  auto delta = std::make_shared<const FinCat>(M.delta);
  int bound = max_ordinal;
  M.cat.comp[{"+", "+", "+"}] =
      EAction{[delta, bound](const SimplexRef& g, const SimplexRef& f) {
        return sum_refs(*delta, *delta, *delta, bound, g, f);
      }};
  return M;
}

EmWeightData em_weight(const MndECat& mnd, int max_ordinal) {
  EmWeightData E;
  E.bound = max_ordinal;
  E.delta_top = ordinal_fincat(max_ordinal, false, true);
  ESSet v;
  v.loose = nerve(E.delta_top, mnd.k);
  v.tight_vertices = {ordinal_object(0)};
  E.weight.ob["+"] = v;
  E.weight.dom_cut["+"] = mnd.k;
  auto dm = std::make_shared<const FinCat>(mnd.delta);
  auto dt = std::make_shared<const FinCat>(E.delta_top);
  int bound = max_ordinal;
  E.weight.act[{"+", "+"}] =
      EAction{[dm, dt, bound](const SimplexRef& u, const SimplexRef& w) {
        return sum_refs(*dm, *dt, *dt, bound, u, w);
      }};
  return E;
}

void validate_strict_monad(const StrictMonad& M) {
  M.C.validate();
  validate_cfunctor(M.C, M.C, M.T);
  validate_cnat(M.C, M.C, cf_identity(M.C), M.T, M.unit);
  validate_cnat(M.C, M.C, cf_compose(M.T, M.T), M.T, M.mult);
  for (auto& x : M.C.objects) {
    const std::string& Tx = M.T.ob.at(x);
    std::string l = M.C.compose(M.mult.comp.at(x), M.T.mor.at(M.unit.comp.at(x)));
    std::string r = M.C.compose(M.mult.comp.at(x), M.unit.comp.at(Tx));
    if (l != M.C.id_of(Tx) || r != M.C.id_of(Tx)) fail("strict monad: unit law fails at " + x);
    std::string la = M.C.compose(M.mult.comp.at(x), M.T.mor.at(M.mult.comp.at(x)));
    std::string ra = M.C.compose(M.mult.comp.at(x), M.mult.comp.at(Tx));
    if (la != ra) fail("strict monad: associativity fails at " + x);
  }
}

/* m under T^i. */
static std::string tpow_mor(const StrictMonad& M, int i, std::string m) {
  for (int t = 0; t < i; ++t) m = M.T.mor.at(m);
  return m;
}

MonadDiagram strict_monad_diagram(const MndECat& mnd, const StrictMonad& M) {
  validate_strict_monad(M);
  MonadDiagram D;
  D.M = M;
  D.mnd = mnd;
  D.powers.push_back(cf_identity(M.C));
  for (int j = 1; j <= mnd.bound + 1; ++j)
    D.powers.push_back(cf_compose(M.T, D.powers[j - 1]));
  auto delta_nat = [&](int p, int i) {  /* value insertion at i: T^{p+1} => T^{p+2} */
    CNat n;
    for (auto& x : M.C.objects)
      n.comp[x] = tpow_mor(M, i, M.unit.comp.at(D.powers[p + 1 - i].ob.at(x)));
    return n;
  };
  auto sigma_nat = [&](int p, int i) {  /* repeat at i, i+1: T^{p+1} => T^p */
    CNat n;
    for (auto& x : M.C.objects)
      n.comp[x] = tpow_mor(M, i, M.mult.comp.at(D.powers[p - 1 - i].ob.at(x)));
    return n;
  };
  for (auto& mid : mnd.delta.morphisms) {
    int p, q;
    std::vector<int> v;
    parse_ordinal_morphism(mid, p, q, v);
    CNat acc = nat_identity(M.C, M.C, D.powers[p + 1]);
    int cur = p;
    bool again = true;
    while (again) {  /* surjective part, repeats removed left to right */
      again = false;
      for (int j = 0; j + 1 <= cur; ++j)
        if (v[j] == v[j + 1]) {
          acc = nat_vcomp(M.C, sigma_nat(cur, j), acc);
          v.erase(v.begin() + j + 1);
          --cur;
          again = true;
          break;
        }
    }
    std::vector<char> hit(q + 1, 0);
    for (int t : v) hit[t] = 1;
    for (int c = 0; c <= q; ++c)  /* injective part, missing values ascending */
      if (!hit[c]) {
        acc = nat_vcomp(M.C, delta_nat(cur, c), acc);
        ++cur;
      }
    D.arrow_nat[mid] = acc;
  }
  for (auto& m1 : mnd.delta.morphisms)
    for (auto& m2 : mnd.delta.morphisms) {
      if (mnd.delta.cod_of(m1) != mnd.delta.dom_of(m2)) continue;
      std::string c = mnd.delta.compose(m2, m1);
      if (!(D.arrow_nat.at(c) == nat_vcomp(M.C, D.arrow_nat.at(m2), D.arrow_nat.at(m1))))
        fail("monad diagram: functoriality fails at " + m2 + " after " + m1);
    }
  return D;
}

EWeight monad_hom_weight(const MonadDiagram& D, const FinCat& X, int value_dim,
                         const std::function<bool(const CFunctor&)>& sel, size_t budget) {
  auto fc = std::make_shared<const FunctorCat>(functor_cat(X, D.M.C, budget));
  EWeight W;
  ESSet v;
  v.loose = nerve(fc->cat, value_dim);
  for (size_t i = 0; i < fc->cat.objects.size(); ++i)
    if (!sel || sel(fc->objs[i])) v.tight_vertices.insert(fc->cat.objects[i]);
  W.ob["+"] = v;
  W.dom_cut["+"] = value_dim;
  auto dd = std::make_shared<const MonadDiagram>(D);
  W.act[{"+", "+"}] = EAction{[dd, fc, value_dim](const SimplexRef& u, const SimplexRef& w)
                                  -> std::optional<SimplexRef> {
    const FinCat& delta = dd->mnd.delta;
    int n = nerve_dim(delta, u);
    if (nerve_dim(fc->cat, w) != n) fail("monad action: dimension mismatch");
    NatChain ch = natchain_of_ref(*fc, w, n);
    if (n == 0) {
      int p = parse_ordinal_object(u.base);
      CFunctor f = cf_compose(dd->powers[p + 1], ch.fs[0]);
      return SimplexRef{{}, fc->cat.objects[fc->index_of(f)]};
    }
    std::vector<std::string> eu = nerve_expand_ref(delta, u, n);
    std::vector<int> ords;
    ords.push_back(parse_ordinal_object(delta.dom_of(eu[0])));
    for (auto& e : eu) ords.push_back(parse_ordinal_object(delta.cod_of(e)));
    NatChain out;
    for (int i = 0; i <= n; ++i) out.fs.push_back(cf_compose(dd->powers[ords[i] + 1], ch.fs[i]));
    for (int i = 0; i < n; ++i)
      out.taus.push_back(nat_hcomp(dd->M.C, dd->M.C, dd->powers[ords[i + 1] + 1],
                                   dd->arrow_nat.at(eu[i]), ch.fs[i], ch.taus[i]));
    std::vector<std::string> entries;
    int core = 0;
    for (int i = 0; i < n; ++i) {
      entries.push_back(
          fc->nat_id(fc->index_of(out.fs[i]), fc->index_of(out.fs[i + 1]), out.taus[i]));
      if (!fc->cat.is_id(entries.back())) ++core;
    }
    if (core > value_dim) return std::nullopt;
    return nerve_chain_ref(fc->cat, entries);
  }};
  return W;
}

FinCat em_category(const StrictMonad& M) {
  const FinCat& C = M.C;
  FinCat E;
  std::vector<std::pair<std::string, std::string>> algs;
  for (auto& a : C.objects) {
    const std::string& Ta = M.T.ob.at(a);
    for (auto& al : C.hom(Ta, a)) {
      if (C.compose(al, M.unit.comp.at(a)) != C.id_of(a)) continue;
      if (C.compose(al, M.T.mor.at(al)) != C.compose(al, M.mult.comp.at(a))) continue;
      algs.push_back({a, al});
      E.add_object("(" + a + "|" + al + ")");
    }
  }
  for (auto& [a, al] : algs)
    for (auto& [b, be] : algs) {
      std::string oa = "(" + a + "|" + al + ")", ob = "(" + b + "|" + be + ")";
      for (auto& f : C.hom(a, b))
        if (C.compose(be, M.T.mor.at(f)) == C.compose(f, al))
          E.add_morphism("(" + f + "|" + oa + "|" + ob + ")", oa, ob);
    }
  for (auto& [a, al] : algs) {
    std::string oa = "(" + a + "|" + al + ")";
    E.identity[oa] = "(" + C.id_of(a) + "|" + oa + "|" + oa + ")";
  }
  for (auto& m1 : E.morphisms)
    for (auto& m2 : E.morphisms) {
      if (E.cod_of(m1) != E.dom_of(m2)) continue;
      std::string f1 = m1.substr(1, m1.find('|') - 1);
      std::string f2 = m2.substr(1, m2.find('|') - 1);
      E.comp[{m2, m1}] = "(" + C.compose(f2, f1) + "|" + E.dom_of(m1) + "|" + E.cod_of(m2) + ")";
    }
  E.sort_all();
  E.validate();
  return E;
}

/* Carrier and structure map behind an algebra object id. */
static void parse_algebra(const std::string& id, std::string& a, std::string& al) {
  size_t bar = id.find('|');
  if (id.size() < 3 || id.front() != '(' || id.back() != ')' || bar == std::string::npos)
    fail("algebra object: bad id " + id);
  a = id.substr(1, bar - 1);
  al = id.substr(bar + 1, id.size() - bar - 2);
}

/* Projection of the algebra category onto carriers. */
static CFunctor em_forgetful(const FinCat& E) {
  CFunctor U;
  for (auto& o : E.objects) {
    std::string a, al;
    parse_algebra(o, a, al);
    U.ob[o] = a;
  }
  for (auto& m : E.morphisms) {
    if (m.size() < 2 || m.front() != '(') fail("algebra morphism: bad id " + m);
    U.mor[m] = m.substr(1, m.find('|') - 1);
  }
  return U;
}

/* The transformation T^p U => T^q U over the algebra category attached to a
   top-preserving ordinal map: repeats below the top slot use mult, a repeat at
   the top slot uses the structure maps, insertions use unit. */
static CNat cone_nat(const StrictMonad& M, const FinCat& E, const CFunctor& U,
                     const std::string& mid) {
  int p, q;
  std::vector<int> v;
  parse_ordinal_morphism(mid, p, q, v);
  auto val = [&](int j, const std::string& e) {
    std::string x = U.ob.at(e);
    for (int t = 0; t < j; ++t) x = M.T.ob.at(x);
    return x;
  };
  CNat acc;
  for (auto& e : E.objects) acc.comp[e] = M.C.id_of(val(p, e));
  int cur = p;
  bool again = true;
  while (again) {
    again = false;
    for (int j = 0; j + 1 <= cur; ++j)
      if (v[j] == v[j + 1]) {
        for (auto& e : E.objects) {
          std::string step;
          if (j == cur - 1) {
            std::string a, al;
            parse_algebra(e, a, al);
            step = tpow_mor(M, cur - 1, al);
          } else {
            step = tpow_mor(M, j, M.mult.comp.at(val(cur - 2 - j, e)));
          }
          acc.comp[e] = M.C.compose(step, acc.comp.at(e));
        }
        v.erase(v.begin() + j + 1);
        --cur;
        again = true;
        break;
      }
  }
  std::vector<char> hit(q + 1, 0);
  for (int t : v) hit[t] = 1;
  for (int c = 0; c <= q; ++c)
    if (!hit[c]) {
      for (auto& e : E.objects)
        acc.comp[e] =
            M.C.compose(tpow_mor(M, c, M.unit.comp.at(val(cur - c, e))), acc.comp.at(e));
      ++cur;
    }
  return acc;
}

EmCheckReport em_universal_property_check(const StrictMonad& M, const FinCat& candidate, int k,
                                          const std::function<bool(const CFunctor&)>& base_sel,
                                          size_t budget) {
  EmCheckReport rep;
  try {
    validate_strict_monad(M);
    rep.laws_ok = true;
  } catch (const std::exception& e) {
    rep.witness = e.what();
    return rep;
  }
  FinCat E = em_category(M);
  rep.candidate_matches_oracle = (bool)iso_fincat(candidate, E);
  CFunctor U = em_forgetful(E);
  MndECat mnd = mnd_ecat(k, 2);
  MonadDiagram D = strict_monad_diagram(mnd, M);
  EmWeightData WD = em_weight(mnd, 2);
  rep.iso_ok = true;
  rep.tight_ok = true;
  rep.forgetful_tight = true;
  rep.forgetful_reflects = true;
  std::vector<std::pair<std::string, const FinCat*>> probes = {{"base", &M.C},
                                                               {"algebras", &E}};
  for (auto& [pname, Xp] : probes) {
    const FinCat& X = *Xp;
    rep.probes.push_back(pname);
    EWeight VX = monad_hom_weight(D, X, k, base_sel, budget);
    WeightedLimit L = weighted_limit(mnd.cat, WD.weight, VX, budget, 1);
    FunctorCat FXE = functor_cat(X, E, budget);
    FunctorCat FXC = functor_cat(X, M.C, budget);
    SSet HX = nerve(FXE.cat, k);
    SMap phi;
    bool ok = true;
    std::string why;
    for (int j = 0; j < (int)HX.cells.size() && ok; ++j) {
      SSet Dj = std_simplex(j);
      const ProductSSet& P = L.doms[j].at("+");
      int cut = std::min(WD.weight.cut_of("+"), P.sset.top_dim);
      for (auto& gid : HX.cells[j]) {
        NatChain g = natchain_of_ref(FXE, SimplexRef{{}, gid}, j);
        LimitFamily fam;
        SMap cm;
        for (int d = 0; d <= cut; ++d)
          for (auto& pc : P.sset.cells[d]) {
            auto& parts = P.parts.at(pc);
            std::vector<int> dv = monotone_of_ref(Dj, parts.first);
            int r = (int)dv.size() - 1;
            const SimplexRef& w = parts.second;
            std::vector<std::string> ew;
            std::vector<int> ords;
            if (r == 0) {
              ords.push_back(parse_ordinal_object(w.base));
            } else {
              ew = nerve_expand_ref(WD.delta_top, w, r);
              ords.push_back(parse_ordinal_object(WD.delta_top.dom_of(ew[0])));
              for (auto& e : ew) ords.push_back(parse_ordinal_object(WD.delta_top.cod_of(e)));
            }
            NatChain q;
            for (int i = 0; i <= r; ++i)
              q.fs.push_back(cf_compose(D.powers[ords[i]], cf_compose(U, g.fs[dv[i]])));
            for (int i = 0; i < r; ++i) {
              CNat gstep;  /* composite of the sampled mapping-cell steps */
              for (auto& x : X.objects) gstep.comp[x] = E.id_of(g.fs[dv[i]].ob.at(x));
              for (int t = dv[i]; t < dv[i + 1]; ++t)
                for (auto& x : X.objects)
                  gstep.comp[x] = E.compose(g.taus[t].comp.at(x), gstep.comp.at(x));
              CNat rho = cone_nat(M, E, U, ew[i]);
              CNat gam;
              for (auto& x : X.objects)
                gam.comp[x] = M.C.compose(rho.comp.at(g.fs[dv[i + 1]].ob.at(x)),
                                          tpow_mor(M, ords[i], U.mor.at(gstep.comp.at(x))));
              q.taus.push_back(gam);
            }
            cm.assignment[pc] = ref_of_natchain(FXC, q);
          }
        fam.comp["+"] = std::move(cm);
        auto it = L.index[j].find(serialize_family(fam));
        if (it == L.index[j].end()) {
          ok = false;
          why = pname + ": no family matches mapping cell " + gid;
          break;
        }
        phi.assignment[gid] = SimplexRef{{}, it->second};
      }
    }
    if (ok && !smap_iso(HX, L.limit.loose, phi)) {
      ok = false;
      why = pname + ": comparison is not an isomorphism";
    }
    if (!ok) {
      rep.iso_ok = false;
      if (rep.witness.empty()) rep.witness = why;
      continue;
    }
    if (!HX.cells.empty())
      for (auto& v : HX.cells[0]) {
        const CFunctor& G = FXE.objs[std::stoul(v.substr(1))];
        bool want = !base_sel || base_sel(cf_compose(U, G));
        if (L.limit.tight_vertex(phi.at(v).base) != want) {
          rep.tight_ok = false;
          if (rep.witness.empty()) rep.witness = pname + ": tight mismatch at " + v;
          break;
        }
      }
    EMap pr = limit_projection(L, WD.weight, VX, "+", ordinal_object(0));
    if (!pr.tight) {
      rep.forgetful_tight = false;
      if (rep.witness.empty()) rep.witness = pname + ": carrier projection is loose";
    }
    if (auto wtn = limit_reflection_witness(L, WD.weight, VX)) {
      rep.forgetful_reflects = false;
      if (rep.witness.empty()) rep.witness = pname + ": tightness not reflected at " + *wtn;
    }
  }
  return rep;
}

}  // namespace rigged
