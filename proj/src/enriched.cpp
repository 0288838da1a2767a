#include "rigged/enriched.hpp"

#include <algorithm>
#include <climits>

namespace rigged {

[[noreturn]] static void fail(const std::string& msg) { throw std::runtime_error(msg); }

SimplexRef apply_word(SimplexRef r, const std::vector<int>& w) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.deg = word_insert(r.deg, *it);
  return r;
}

/* Unique x with word_insert(x.deg, i) == r.deg, if any. */
static std::optional<SimplexRef> strip_one(const SimplexRef& r, int i) {
  for (size_t t = 0; t < r.deg.size(); ++t) {
    std::vector<int> cand = r.deg;
    cand.erase(cand.begin() + t);
    if (word_insert(cand, i) == r.deg) return SimplexRef{cand, r.base};
  }
  return std::nullopt;
}

std::optional<SimplexRef> strip_word(const SimplexRef& r, const std::vector<int>& w) {
  SimplexRef cur = r;
  for (int i : w) {
    auto nxt = strip_one(cur, i);
    if (!nxt) return std::nullopt;
    cur = *nxt;
  }
  return cur;
}

std::vector<int> monotone_of_ref(const SSet& S, const SimplexRef& r) {
  std::vector<int> out;
  for (auto& v : S.vertices_of(r)) out.push_back(std::stoi(v));
  return out;
}

SimplexRef act_by_monotone(const SSet& S, const SimplexRef& r, const std::vector<int>& alpha) {
  int d = S.ref_dim(r);
  if (alpha.empty()) fail("act_by_monotone: empty value list");
  for (size_t i = 0; i + 1 < alpha.size(); ++i)
    if (alpha[i] > alpha[i + 1]) fail("act_by_monotone: values not monotone");
  if (alpha.front() < 0 || alpha.back() > d) fail("act_by_monotone: value out of range");
  std::vector<char> hit(d + 1, 0);
  for (int v : alpha) hit[v] = 1;
  SimplexRef cur = r;
  for (int v = d; v >= 0; --v)
    if (!hit[v]) cur = S.face(cur, v);
  for (int i = 0; i + 1 < (int)alpha.size(); ++i)
    if (alpha[i] == alpha[i + 1]) cur = S.degenerate(cur, i);
  return cur;
}

bool smap_iso(const SSet& S, const SSet& T, const SMap& f) {
  try {
    validate_smap(S, T, f);
  } catch (const std::exception&) {
    return false;
  }
  int top = std::max((int)S.cells.size(), (int)T.cells.size());
  for (int n = 0; n < top; ++n) {
    size_t sc = n < (int)S.cells.size() ? S.cells[n].size() : 0;
    size_t tc = n < (int)T.cells.size() ? T.cells[n].size() : 0;
    if (sc != tc) return false;
    if (!sc) continue;
    std::set<std::string> seen;
    for (auto& id : S.cells[n]) {
      const SimplexRef& r = f.at(id);
      if (!r.deg.empty()) return false;
      seen.insert(r.base);
    }
    if (seen.size() != sc) return false;
  }
  return true;
}

SimplexRef hom_compose_ref(const SSet& S, const SSet& T, const SSet& U,
                           const HomSSet& HST, const HomSSet& HTU, const HomSSet& HSU,
                           const SimplexRef& g, const SimplexRef& f) {
  int n = HST.hom.ref_dim(f);
  if (HTU.hom.ref_dim(g) != n) fail("hom_compose_ref: dimension mismatch");
  if (n > HSU.k) fail("hom_compose_ref: dimension beyond truncation");
  SMap mf = hom_map_of_ref(HST, S, T, f);
  SMap mg = hom_map_of_ref(HTU, T, U, g);
  SSet Dn = std_simplex(n);
  const ProductSSet& P = HSU.dom_prod[n];
  const ProductSSet& PT = HTU.dom_prod[n];
  SMap out;
  for (auto& lv : P.sset.cells)
    for (auto& id : lv) {
      auto& pr = P.parts.at(id);
      SimplexRef mid = mf.apply(T, SimplexRef{{}, id});
      out.assignment[id] = mg.apply(U, PT.pair_ref(Dn, T, pr.first, mid));
    }
  return hom_ref_of_map(HSU, S, U, out, n);
}

EAction action_from_smap(std::shared_ptr<const ProductSSet> prod, std::shared_ptr<const SSet> A,
                         std::shared_ptr<const SSet> B, std::shared_ptr<const SMap> m) {
  return EAction{[prod, A, B, m](const SimplexRef& u, const SimplexRef& v)
                     -> std::optional<SimplexRef> {
    SimplexRef p = prod->pair_ref(*A, *B, u, v);
    auto it = m->assignment.find(p.base);
    if (it == m->assignment.end()) return std::nullopt;
    return apply_word(it->second, p.deg);
  }};
}

EAction action_from_curried(std::shared_ptr<const std::map<std::string, SMap>> curried,
                            std::shared_ptr<const SSet> B,
                            const std::map<std::string, int>& first_dims) {
  auto dims = std::make_shared<const std::map<std::string, int>>(first_dims);
  return EAction{[curried, B, dims](const SimplexRef& u, const SimplexRef& v)
                     -> std::optional<SimplexRef> {
    auto it = curried->find(u.base);
    if (it == curried->end()) return std::nullopt;
    int j = dims->at(u.base);
    std::vector<int> top(j + 1);
    for (int i = 0; i <= j; ++i) top[i] = i;
    SSet Dj = std_simplex(j);
    SimplexRef delta = apply_word(SimplexRef{{}, chain_id(top)}, u.deg);
    ProductSSet P = product(Dj, *B);
    SimplexRef p = P.pair_ref(Dj, *B, delta, v);
    auto jt = it->second.assignment.find(p.base);
    if (jt == it->second.assignment.end()) return std::nullopt;
    return apply_word(jt->second, p.deg);
  }};
}

const ESSet& ECat::hom_of(const std::string& a, const std::string& b) const {
  auto it = hom.find({a, b});
  if (it == hom.end()) fail("ecat: no hom " + a + " -> " + b);
  return it->second;
}

SimplexRef ECat::id_ref(const std::string& a, int n) const {
  auto it = id.find(a);
  if (it == id.end()) fail("ecat: no identity at " + a);
  return deg_vertex_ref(it->second, n);
}

std::optional<SimplexRef> ECat::compose2(const std::string& a, const std::string& b,
                                         const std::string& c, const SimplexRef& g,
                                         const SimplexRef& f) const {
  auto it = comp.find({a, b, c});
  if (it == comp.end()) fail("ecat: no composition " + a + " -> " + b + " -> " + c);
  return it->second(g, f);
}

void ECat::validate(size_t max_triples) const {
  if (objects.empty()) fail("ecat: no objects");
  if (std::set<std::string>(objects.begin(), objects.end()).size() != objects.size())
    fail("ecat: duplicate objects");
  for (auto& a : objects)
    for (auto& b : objects) {
      hom_of(a, b).validate();
      for (auto& c : objects) {
        auto it = comp.find({a, b, c});
        if (it == comp.end() || !it->second.defined())
          fail("ecat: missing composition " + a + " -> " + b + " -> " + c);
      }
    }
  for (auto& a : objects) {
    auto it = id.find(a);
    if (it == id.end()) fail("ecat: missing identity at " + a);
    const ESSet& h = hom_of(a, a);
    if (!h.loose.has_cell(it->second) || h.loose.dim_of(it->second) != 0)
      fail("ecat: identity is not a vertex at " + a);
    if (!h.tight_vertex(it->second)) fail("ecat: identity vertex is loose at " + a);
  }
  /* unit laws on every ref up to the truncation level */
  for (auto& a : objects)
    for (auto& b : objects) {
      const ESSet& h = hom_of(a, b);
      for (int n = 0; n <= k; ++n)
        for (auto& f : h.loose.all_refs(n)) {
          auto l = compose2(a, b, b, id_ref(b, n), f);
          if (!l || !(*l == f)) fail("ecat: left unit fails in hom " + a + " -> " + b);
          auto r = compose2(a, a, b, f, id_ref(a, n));
          if (!r || !(*r == f)) fail("ecat: right unit fails in hom " + a + " -> " + b);
        }
    }
  /* associativity, capped; both-defined outer composites must agree */
  size_t used = 0;
  for (auto& a : objects)
    for (auto& b : objects)
      for (auto& c : objects)
        for (auto& d : objects)
          for (int n = 0; n <= k && used <= max_triples; ++n)
            for (auto& h : hom_of(c, d).loose.all_refs(n)) {
              for (auto& g : hom_of(b, c).loose.all_refs(n)) {
                auto hg = compose2(b, c, d, h, g);
                for (auto& f : hom_of(a, b).loose.all_refs(n)) {
                  if (++used > max_triples) break;
                  auto gf = compose2(a, b, c, g, f);
                  if (!gf || !hg) continue;
                  auto l = compose2(a, c, d, h, *gf);
                  auto r = compose2(a, b, d, *hg, f);
                  if ((bool)l != (bool)r) fail("ecat: associativity domain mismatch");
                  if (l && !(*l == *r)) fail("ecat: associativity fails");
                }
                if (used > max_triples) break;
              }
              if (used > max_triples) break;
            }
  /* composites of tight vertices stay tight */
  for (auto& a : objects)
    for (auto& b : objects)
      for (auto& c : objects)
        for (auto& u : hom_of(b, c).tight_vertices)
          for (auto& v : hom_of(a, b).tight_vertices) {
            auto w = compose2(a, b, c, SimplexRef{{}, u}, SimplexRef{{}, v});
            if (w && !hom_of(a, c).tight_vertex(w->base))
              fail("ecat: tight cells compose loosely " + a + " -> " + b + " -> " + c);
          }
}

const ESSet& EWeight::at(const std::string& a) const {
  auto it = ob.find(a);
  if (it == ob.end()) fail("weight: no value at " + a);
  return it->second;
}

int EWeight::cut_of(const std::string& a) const {
  auto it = dom_cut.find(a);
  return it == dom_cut.end() ? INT_MAX : it->second;
}

std::optional<SimplexRef> EWeight::apply(const std::string& a, const std::string& b,
                                         const SimplexRef& u, const SimplexRef& w) const {
  auto it = act.find({a, b});
  if (it == act.end()) fail("weight: no action " + a + " -> " + b);
  return it->second(u, w);
}

void EWeight::validate(const ECat& A, size_t max_triples) const {
  for (auto& a : A.objects) {
    at(a).validate();
    for (auto& b : A.objects) {
      auto it = act.find({a, b});
      if (it == act.end() || !it->second.defined())
        fail("weight: missing action " + a + " -> " + b);
    }
  }
  /* identity acts trivially */
  for (auto& a : A.objects) {
    int top = std::min(A.k, cut_of(a));
    for (int n = 0; n <= top; ++n)
      for (auto& w : at(a).loose.all_refs(n)) {
        auto r = apply(a, a, A.id_ref(a, n), w);
        if (!r || !(*r == w)) fail("weight: unit action fails at " + a);
      }
  }
  /* action respects composition, capped */
  size_t used = 0;
  for (auto& a : A.objects)
    for (auto& b : A.objects)
      for (auto& c : A.objects)
        for (int n = 0; n <= A.k && used <= max_triples; ++n)
          for (auto& g : A.hom_of(b, c).loose.all_refs(n)) {
            for (auto& f : A.hom_of(a, b).loose.all_refs(n)) {
              auto gf = A.compose2(a, b, c, g, f);
              for (auto& w : at(a).loose.all_refs(n)) {
                if (++used > max_triples) break;
                auto fw = apply(a, b, f, w);
                if (!fw || !gf) continue;
                auto lhs = apply(a, c, *gf, w);
                auto rhs = apply(b, c, g, *fw);
                if ((bool)lhs != (bool)rhs) fail("weight: action domain mismatch");
                if (lhs && !(*lhs == *rhs)) fail("weight: action functoriality fails");
              }
              if (used > max_triples) break;
            }
            if (used > max_triples) break;
          }
  /* tight cells act tightly */
  for (auto& a : A.objects)
    for (auto& b : A.objects)
      for (auto& u : A.hom_of(a, b).tight_vertices)
        for (auto& w : at(a).tight_vertices) {
          auto r = apply(a, b, SimplexRef{{}, u}, SimplexRef{{}, w});
          if (r && !at(b).tight_vertex(r->base))
            fail("weight: tight action fails " + a + " -> " + b);
        }
}

EWeight representable_weight(const ECat& A, const std::string& a0) {
  auto base = std::make_shared<const ECat>(A);
  EWeight W;
  for (auto& b : A.objects) {
    W.ob[b] = A.hom_of(a0, b);
    W.dom_cut[b] = A.k;
  }
  for (auto& a : A.objects)
    for (auto& b : A.objects)
      W.act[{a, b}] = EAction{[base, a0, a, b](const SimplexRef& u, const SimplexRef& w) {
        return base->compose2(a0, a, b, u, w);
      }};
  return W;
}

ECat dcat_rigged(int n, int k) {
  if (n < 0) fail("dcat_rigged: negative dimension");
  ECat D;
  D.k = k;
  D.objects = {"x", "y"};
  ESSet pt = chordate(std_simplex(0));
  ESSet bnd;
  bnd.loose = boundary(n).sset;
  if (n >= 1) bnd.tight_vertices.insert(std::to_string(n));
  ESSet none;
  D.hom[{"x", "x"}] = pt;
  D.hom[{"y", "y"}] = pt;
  D.hom[{"x", "y"}] = bnd;
  D.hom[{"y", "x"}] = none;
  D.id = {{"x", "0"}, {"y", "0"}};
  EAction ret_f{[](const SimplexRef&, const SimplexRef& f) {
    return std::optional<SimplexRef>(f);
  }};
  EAction ret_g{[](const SimplexRef& g, const SimplexRef&) {
    return std::optional<SimplexRef>(g);
  }};
  EAction never{[](const SimplexRef&, const SimplexRef&) {
    return std::optional<SimplexRef>();
  }};
  D.comp[{"x", "x", "x"}] = ret_f;
  D.comp[{"x", "x", "y"}] = ret_g;
  D.comp[{"x", "y", "y"}] = ret_f;
  D.comp[{"y", "y", "y"}] = ret_f;
  D.comp[{"x", "y", "x"}] = never;
  D.comp[{"y", "x", "x"}] = never;
  D.comp[{"y", "x", "y"}] = never;
  D.comp[{"y", "y", "x"}] = never;
  return D;
}

EWeight weight_terminal_rigged(int n, int k) {
  if (n < 0) fail("weight_terminal_rigged: negative dimension");
  (void)k;
  EWeight W;
  W.ob["x"] = chordate(std_simplex(0));
  ESSet full;
  full.loose = std_simplex(n);
  full.tight_vertices.insert(std::to_string(n));
  W.ob["y"] = full;
  auto bc = std::make_shared<const SubSSet>(boundary(n));
  auto tgt = std::make_shared<const SSet>(std_simplex(n));
  EAction keep{[](const SimplexRef&, const SimplexRef& w) {
    return std::optional<SimplexRef>(w);
  }};
  EAction never{[](const SimplexRef&, const SimplexRef&) {
    return std::optional<SimplexRef>();
  }};
  W.act[{"x", "x"}] = keep;
  W.act[{"y", "y"}] = keep;
  W.act[{"y", "x"}] = never;
  W.act[{"x", "y"}] = EAction{[bc, tgt](const SimplexRef& u, const SimplexRef&) {
    return std::optional<SimplexRef>(bc->incl.apply(*tgt, u));
  }};
  return W;
}

FdECat fdelta_full_sub_ecat(const std::vector<std::pair<std::string, ESSet>>& objs, int k) {
  FdECat K;
  K.cat.k = k;
  for (auto& [name, s] : objs) {
    if (K.val.count(name)) fail("fdelta category: duplicate object " + name);
    K.cat.objects.push_back(name);
    K.val[name] = s;
  }
  std::map<std::string, std::shared_ptr<const ESSet>> vs;
  for (auto& [name, s] : K.val) vs[name] = std::make_shared<const ESSet>(s);
  for (auto& [a, sa] : vs)
    for (auto& [b, sb] : vs) {
      auto h = std::make_shared<const EHom>(ehom(*sa, *sb, k));
      K.homdata[{a, b}] = h;
      K.cat.hom[{a, b}] = h->esset;
    }
  for (auto& [a, sa] : vs) {
    const EHom& h = *K.homdata.at({a, a});
    K.cat.id[a] =
        hom_ref_of_map(h.hom, sa->loose, sa->loose, h.hom.dom_prod[0].proj2, 0).base;
  }
  for (auto& [a, sa] : vs)
    for (auto& [b, sb] : vs)
      for (auto& [c, sc] : vs) {
        auto hab = K.homdata.at({a, b});
        auto hbc = K.homdata.at({b, c});
        auto hac = K.homdata.at({a, c});
        auto A = sa, B = sb, C = sc;
        K.cat.comp[{a, b, c}] =
            EAction{[hab, hbc, hac, A, B, C](const SimplexRef& g, const SimplexRef& f)
                        -> std::optional<SimplexRef> {
              return hom_compose_ref(A->loose, B->loose, C->loose, hab->hom, hbc->hom,
                                     hac->hom, g, f);
            }};
      }
  return K;
}

EWeight fd_restrict_weight(const FdECat& K, const ECat& A, const EFunctor& F) {
  struct Data {
    FdECat K;
    EFunctor F;
  };
  auto sh = std::make_shared<const Data>(Data{K, F});
  EWeight W;
  for (auto& a : A.objects) W.ob[a] = K.val.at(F.ob.at(a));
  for (auto& a : A.objects)
    for (auto& b : A.objects) {
      std::string fa = F.ob.at(a), fb = F.ob.at(b);
      W.act[{a, b}] = EAction{[sh, a, b, fa, fb](const SimplexRef& u, const SimplexRef& w)
                                  -> std::optional<SimplexRef> {
        const EHom& h = *sh->K.homdata.at({fa, fb});
        const SSet& SA = sh->K.val.at(fa).loose;
        const SSet& SB = sh->K.val.at(fb).loose;
        int d = SA.ref_dim(w);
        SimplexRef hu = sh->F.hom.at({a, b}).apply(h.hom.hom, u);
        SMap m = hom_map_of_ref(h.hom, SA, SB, hu);
        std::vector<int> top(d + 1);
        for (int i = 0; i <= d; ++i) top[i] = i;
        SSet Dd = std_simplex(d);
        ProductSSet P = product(Dd, SA);
        return m.apply(SB, P.pair_ref(Dd, SA, SimplexRef{{}, chain_id(top)}, w));
      }};
    }
  return W;
}

/* Dimension of a nerve simplex ref: word length plus base chain length. */
static int dim_of_nerve_ref(const FinCat& C, const SimplexRef& r) {
  int b = 0;
  if (!(r.base.find(';') == std::string::npos && C.has_object(r.base)))
    b = 1 + (int)std::count(r.base.begin(), r.base.end(), ';');
  return b + (int)r.deg.size();
}

/* Position of a functor-category object id in its object list. */
static int fc_obj_pos(const FunctorCat& FC, const std::string& id) {
  for (size_t i = 0; i < FC.cat.objects.size(); ++i)
    if (FC.cat.objects[i] == id) return (int)i;
  fail("functor category: unknown object " + id);
}

/* Objects visited along a nerve simplex, n+1 entries. */
static std::vector<std::string> nerve_objects(const FinCat& C, const SimplexRef& r, int n,
                                              const std::vector<std::string>& entries) {
  std::vector<std::string> obs;
  if (n == 0) {
    obs.push_back(r.base);
    return obs;
  }
  obs.push_back(C.dom_of(entries[0]));
  for (auto& e : entries) obs.push_back(C.cod_of(e));
  return obs;
}

CNat nat_hcomp(const FinCat& mid, const FinCat& tgt, const CFunctor& G2, const CNat& beta,
               const CFunctor& F1, const CNat& alpha) {
  (void)mid;
  CNat out;
  for (auto& [x, ax] : alpha.comp) out.comp[x] = tgt.compose(G2.mor.at(ax), beta.comp.at(F1.ob.at(x)));
  return out;
}

NatChain natchain_of_ref(const FunctorCat& FC, const SimplexRef& r, int n) {
  std::vector<std::string> entries = nerve_expand_ref(FC.cat, r, n);
  std::vector<std::string> obs = nerve_objects(FC.cat, r, n, entries);
  NatChain ch;
  for (auto& o : obs) ch.fs.push_back(FC.objs[fc_obj_pos(FC, o)]);
  for (auto& e : entries) ch.taus.push_back(FC.nats.at(e));
  return ch;
}

SimplexRef ref_of_natchain(const FunctorCat& FC, const NatChain& ch) {
  if (ch.fs.size() != ch.taus.size() + 1) fail("ref_of_natchain: length mismatch");
  if (ch.taus.empty()) return {{}, FC.cat.objects[FC.index_of(ch.fs[0])]};
  std::vector<std::string> entries;
  for (size_t i = 0; i < ch.taus.size(); ++i)
    entries.push_back(FC.nat_id(FC.index_of(ch.fs[i]), FC.index_of(ch.fs[i + 1]), ch.taus[i]));
  return nerve_chain_ref(FC.cat, entries);
}

TightSel tight_all() {
  return [](const std::string&, const std::string&, const CFunctor&) { return true; };
}

NerveECat nerve_ecat(const std::vector<std::pair<std::string, FinCat>>& obs, const TightSel& sel,
                     int k, size_t budget) {
  NerveECat N;
  N.cat.k = k;
  for (auto& [name, c] : obs) {
    if (N.cats.count(name)) fail("nerve category: duplicate object " + name);
    N.cat.objects.push_back(name);
    N.cats[name] = c;
  }
  for (auto& [a, ca] : N.cats)
    for (auto& [b, cb] : N.cats) {
      auto fc = std::make_shared<const FunctorCat>(functor_cat(ca, cb, budget));
      N.fc[{a, b}] = fc;
      ESSet h;
      h.loose = nerve(fc->cat, k);
      for (size_t i = 0; i < fc->cat.objects.size(); ++i)
        if (!sel || sel(a, b, fc->objs[i])) h.tight_vertices.insert(fc->cat.objects[i]);
      N.cat.hom[{a, b}] = std::move(h);
    }
  for (auto& [a, ca] : N.cats) {
    const FunctorCat& fc = *N.fc.at({a, a});
    N.cat.id[a] = fc.cat.objects[fc.index_of(cf_identity(ca))];
  }
  for (auto& [a, ca] : N.cats)
    for (auto& [b, cb] : N.cats)
      for (auto& [c, cc] : N.cats) {
        auto fab = N.fc.at({a, b});
        auto fbc = N.fc.at({b, c});
        auto fac = N.fc.at({a, c});
        FinCat mid = cb, tgt = cc;
        N.cat.comp[{a, b, c}] =
            EAction{[fab, fbc, fac, mid, tgt](const SimplexRef& g, const SimplexRef& f)
                        -> std::optional<SimplexRef> {
              int n = dim_of_nerve_ref(fab->cat, f);
              if (dim_of_nerve_ref(fbc->cat, g) != n) fail("nerve compose: dimension mismatch");
              NatChain cf = natchain_of_ref(*fab, f, n);
              NatChain cg = natchain_of_ref(*fbc, g, n);
              NatChain out;
              for (int i = 0; i <= n; ++i) out.fs.push_back(cf_compose(cg.fs[i], cf.fs[i]));
              for (int i = 0; i < n; ++i)
                out.taus.push_back(
                    nat_hcomp(mid, tgt, cg.fs[i + 1], cg.taus[i], cf.fs[i], cf.taus[i]));
              return ref_of_natchain(*fac, out);
            }};
      }
  return N;
}

CFunctor nerve_vertex_functor(const NerveECat& N, const std::string& a, const std::string& b,
                              const std::string& v) {
  const FunctorCat& fc = *N.fc.at({a, b});
  return fc.objs[fc_obj_pos(fc, v)];
}

ECat ecat_co(const ECat& K) {
  auto base = std::make_shared<const ECat>(K);
  ECat co;
  co.k = K.k;
  co.objects = K.objects;
  co.id = K.id;
  for (auto& [p, h] : K.hom) co.hom[p] = eopposite(h);
  for (auto& [key, act] : K.comp) {
    std::array<std::string, 3> t = key;
    co.comp[t] = EAction{[base, t](const SimplexRef& g, const SimplexRef& f)
                             -> std::optional<SimplexRef> {
      auto r = base->comp.at(t)(opposite_ref(base->hom_of(t[1], t[2]).loose, g),
                                opposite_ref(base->hom_of(t[0], t[1]).loose, f));
      if (!r) return std::nullopt;
      return opposite_ref(base->hom_of(t[0], t[2]).loose, *r);
    }};
  }
  return co;
}

EWeight eweight_co(const ECat& K, const EWeight& W) {
  auto bk = std::make_shared<const ECat>(K);
  auto bw = std::make_shared<const EWeight>(W);
  EWeight co;
  co.dom_cut = W.dom_cut;
  for (auto& [a, v] : W.ob) co.ob[a] = eopposite(v);
  for (auto& [key, act] : W.act) {
    std::pair<std::string, std::string> p = key;
    co.act[p] = EAction{[bk, bw, p](const SimplexRef& u, const SimplexRef& w)
                            -> std::optional<SimplexRef> {
      auto r = bw->act.at(p)(opposite_ref(bk->hom_of(p.first, p.second).loose, u),
                             opposite_ref(bw->at(p.first).loose, w));
      if (!r) return std::nullopt;
      return opposite_ref(bw->at(p.second).loose, *r);
    }};
  }
  return co;
}

void validate_efunctor(const ECat& A, const ECat& B, const EFunctor& F, size_t max_triples) {
  for (auto& a : A.objects) {
    auto it = F.ob.find(a);
    if (it == F.ob.end()) fail("efunctor: no object image at " + a);
    if (std::find(B.objects.begin(), B.objects.end(), it->second) == B.objects.end())
      fail("efunctor: object image outside target at " + a);
  }
  for (auto& a : A.objects)
    for (auto& b : A.objects) {
      auto it = F.hom.find({a, b});
      if (it == F.hom.end()) fail("efunctor: no hom map " + a + " -> " + b);
      const ESSet& src = A.hom_of(a, b);
      const ESSet& dst = B.hom_of(F.ob.at(a), F.ob.at(b));
      validate_smap(src.loose, dst.loose, it->second);
      for (auto& u : src.tight_vertices)
        if (!dst.tight_vertex(it->second.at(u).base))
          fail("efunctor: tight cell mapped loosely in hom " + a + " -> " + b);
    }
  for (auto& a : A.objects)
    if (F.hom.at({a, a}).at(A.id.at(a)).base != B.id.at(F.ob.at(a)))
      fail("efunctor: identity not preserved at " + a);
  size_t used = 0;
  for (auto& a : A.objects)
    for (auto& b : A.objects)
      for (auto& c : A.objects)
        for (int n = 0; n <= A.k && used <= max_triples; ++n)
          for (auto& g : A.hom_of(b, c).loose.all_refs(n)) {
            for (auto& f : A.hom_of(a, b).loose.all_refs(n)) {
              if (++used > max_triples) break;
              auto gf = A.compose2(a, b, c, g, f);
              if (!gf) continue;
              const SSet& dbc = B.hom_of(F.ob.at(b), F.ob.at(c)).loose;
              const SSet& dab = B.hom_of(F.ob.at(a), F.ob.at(b)).loose;
              const SSet& dac = B.hom_of(F.ob.at(a), F.ob.at(c)).loose;
              auto img = B.compose2(F.ob.at(a), F.ob.at(b), F.ob.at(c),
                                    F.hom.at({b, c}).apply(dbc, g),
                                    F.hom.at({a, b}).apply(dab, f));
              SimplexRef want = F.hom.at({a, c}).apply(dac, *gf);
              if (!img || !(*img == want)) fail("efunctor: composition not preserved");
            }
            if (used > max_triples) break;
          }
}

void validate_enat(const ECat& A, const ECat& B, const EFunctor& F, const EFunctor& G,
                   const ENat& n) {
  for (auto& a : A.objects) {
    auto it = n.comp.find(a);
    if (it == n.comp.end()) fail("enat: no component at " + a);
    const ESSet& h = B.hom_of(F.ob.at(a), G.ob.at(a));
    if (!h.loose.has_cell(it->second) || h.loose.dim_of(it->second) != 0)
      fail("enat: component is not a vertex at " + a);
  }
  for (auto& a : A.objects)
    for (auto& b : A.objects)
      for (int j = 0; j <= A.k; ++j)
        for (auto& u : A.hom_of(a, b).loose.all_refs(j)) {
          const SSet& dab = B.hom_of(F.ob.at(a), F.ob.at(b)).loose;
          const SSet& gab = B.hom_of(G.ob.at(a), G.ob.at(b)).loose;
          auto lhs = B.compose2(F.ob.at(a), F.ob.at(b), G.ob.at(b),
                                deg_vertex_ref(n.comp.at(b), j), F.hom.at({a, b}).apply(dab, u));
          auto rhs = B.compose2(F.ob.at(a), G.ob.at(a), G.ob.at(b),
                                G.hom.at({a, b}).apply(gab, u),
                                deg_vertex_ref(n.comp.at(a), j));
          if ((bool)lhs != (bool)rhs) fail("enat: naturality domain mismatch");
          if (lhs && !(*lhs == *rhs)) fail("enat: naturality fails " + a + " -> " + b);
        }
}

}  // namespace rigged
