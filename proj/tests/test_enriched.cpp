/* Tests for truncated enhanced categories: word/monotone helpers, composition
   and weight validators, mapping-space and nerve categories, bounded ordinal
   machinery, weighted family objects, dual computations, and the strict
   algebra comparisons. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "rigged/enriched.hpp"

using namespace rigged;

/* One object, one point of maps. */
static ECat unit_ecat() {
  ECat A;
  A.k = 2;
  A.objects = {"o"};
  A.hom[{"o", "o"}] = chordate(std_simplex(0));
  A.id["o"] = "0";
  A.comp[{"o", "o", "o"}] =
      EAction{[](const SimplexRef& g, const SimplexRef&) -> std::optional<SimplexRef> {
        return g;
      }};
  return A;
}

/* Two objects with no maps between them. */
static ECat discrete_ecat(const std::string& a, const std::string& b) {
  ECat A;
  A.k = 2;
  A.objects = {a, b};
  ESSet pt = chordate(std_simplex(0));
  ESSet none;
  for (auto& s : A.objects)
    for (auto& t : A.objects) A.hom[{s, t}] = s == t ? pt : none;
  A.id[a] = "0";
  A.id[b] = "0";
  EAction first{[](const SimplexRef& g, const SimplexRef&) -> std::optional<SimplexRef> {
    return g;
  }};
  EAction never{[](const SimplexRef&, const SimplexRef&) -> std::optional<SimplexRef> {
    return std::nullopt;
  }};
  for (auto& s : A.objects)
    for (auto& t : A.objects)
      for (auto& u : A.objects) A.comp[{s, t, u}] = s == t && t == u ? first : never;
  return A;
}

/* Constant weight values on a discrete two-object shape. */
static EWeight discrete_weight(const ECat& A, const ESSet& va, const ESSet& vb) {
  EWeight W;
  W.ob[A.objects[0]] = va;
  W.ob[A.objects[1]] = vb;
  EAction keep{[](const SimplexRef&, const SimplexRef& w) -> std::optional<SimplexRef> {
    return w;
  }};
  EAction never{[](const SimplexRef&, const SimplexRef&) -> std::optional<SimplexRef> {
    return std::nullopt;
  }};
  for (auto& s : A.objects)
    for (auto& t : A.objects) W.act[{s, t}] = s == t ? keep : never;
  return W;
}

/* The group with two elements as a one-object category. */
static FinCat zmod2() {
  FinCat C;
  C.add_object("*");
  C.add_morphism("e", "*", "*");
  C.add_morphism("s", "*", "*");
  C.identity["*"] = "e";
  C.comp[{"e", "e"}] = "e";
  C.comp[{"e", "s"}] = "s";
  C.comp[{"s", "e"}] = "s";
  C.comp[{"s", "s"}] = "e";
  C.sort_all();
  return C;
}

static StrictMonad identity_monad(const FinCat& C) {
  StrictMonad M;
  M.C = C;
  M.T = cf_identity(C);
  M.unit = nat_identity(C, C, M.T);
  M.mult = nat_identity(C, C, M.T);
  return M;
}

/* Everything collapses onto the top of the two-element chain. */
static StrictMonad const_top_monad() {
  StrictMonad M;
  M.C = fincat_linear(1);
  M.T.ob = {{"0", "1"}, {"1", "1"}};
  for (auto& m : M.C.morphisms) M.T.mor[m] = "1<=1";
  M.unit.comp = {{"0", "0<=1"}, {"1", "1<=1"}};
  M.mult.comp = {{"0", "1<=1"}, {"1", "1<=1"}};
  return M;
}

/* Identity functor on the two-element group with the nontrivial element as
   unit and multiplication; lawful since s*s = e. */
static StrictMonad twist_monad(bool lawful) {
  StrictMonad M;
  M.C = zmod2();
  M.T = cf_identity(M.C);
  M.unit.comp = {{"*", lawful ? "s" : "e"}};
  M.mult.comp = {{"*", "s"}};
  return M;
}

/* 0-cell of the mapping space carrying the plain map f : S -> T. */
static SimplexRef hom_vertex_ref(const HomSSet& H, const SSet& S, const SSet& T, const SMap& f) {
  const ProductSSet& P = H.dom_prod[0];
  SMap m;
  for (auto& lv : P.sset.cells)
    for (auto& id : lv) m.assignment[id] = f.apply(T, P.parts.at(id).second);
  return hom_ref_of_map(H, S, T, m, 0);
}

/* Point and interval with the given marks, as a full mapping-space shape. */
static FdECat point_interval(const std::set<std::string>& interval_tights) {
  ESSet S = chordate(std_simplex(0));
  ESSet T;
  T.loose = std_simplex(1);
  T.tight_vertices = interval_tights;
  return fdelta_full_sub_ecat({{"S", S}, {"T", T}}, 2);
}

/* Diagram on the two-object rigged shape sending the marked arrow boundary to
   the endpoints of the interval. */
static EFunctor interval_diagram(const FdECat& K) {
  EFunctor F;
  F.ob["x"] = "S";
  F.ob["y"] = "T";
  SMap hxx;
  hxx.assignment["0"] = SimplexRef{{}, K.cat.id.at("S")};
  F.hom[{"x", "x"}] = hxx;
  SMap hyy;
  hyy.assignment["0"] = SimplexRef{{}, K.cat.id.at("T")};
  F.hom[{"y", "y"}] = hyy;
  const EHom& h = *K.homdata.at({"S", "T"});
  const SSet& S = K.val.at("S").loose;
  const SSet& T = K.val.at("T").loose;
  SMap hxy;
  for (int v = 0; v <= 1; ++v) {
    SMap m;
    m.assignment["0"] = SimplexRef{{}, std::to_string(v)};
    hxy.assignment[std::to_string(v)] = hom_vertex_ref(h.hom, S, T, m);
  }
  F.hom[{"x", "y"}] = hxy;
  F.hom[{"y", "x"}] = SMap{};
  return F;
}

static int nondeg_total(const SSet& S) {
  int n = 0;
  for (auto& lvl : S.cells) n += (int)lvl.size();
  return n;
}

TEST_CASE("degeneracy words apply and strip") {
  SSet D2 = std_simplex(2);
  SimplexRef e{{}, "0.2"};
  SimplexRef r = apply_word(e, {2, 0});
  CHECK(r.deg == std::vector<int>{2, 0});
  CHECK(r.base == "0.2");
  CHECK(D2.ref_dim(r) == 3);
  auto back = strip_word(r, {2, 0});
  REQUIRE(back);
  CHECK(*back == e);
  CHECK(!strip_word(e, {0}));
  auto v = strip_word(SimplexRef{{0}, "1"}, {0});
  REQUIRE(v);
  CHECK(*v == SimplexRef{{}, "1"});
}

TEST_CASE("monotone value lists round-trip through refs") {
  SSet D2 = std_simplex(2);
  SimplexRef top{{}, "0.1.2"};
  CHECK(monotone_of_ref(D2, top) == std::vector<int>{0, 1, 2});
  SimplexRef r = act_by_monotone(D2, top, {0, 0, 2});
  CHECK(r == SimplexRef{{0}, "0.2"});
  CHECK(monotone_of_ref(D2, r) == std::vector<int>{0, 0, 2});
  for (auto& alpha : std::vector<std::vector<int>>{
           {0}, {2}, {0, 1}, {0, 2}, {1, 1}, {0, 1, 1, 2}, {0, 0, 1, 2, 2}}) {
    SimplexRef s = act_by_monotone(D2, top, alpha);
    CHECK(monotone_of_ref(D2, s) == alpha);
  }
}

TEST_CASE("isomorphism recognition for simplicial maps") {
  SSet D2 = std_simplex(2);
  CHECK(smap_iso(D2, D2, id_map(D2)));
  SMap c;
  for (int n = 0; n <= 2; ++n)
    for (auto& id : D2.cells[n]) c.assignment[id] = deg_vertex_ref("0", n);
  CHECK_NOTHROW(validate_smap(D2, D2, c));
  CHECK(!smap_iso(D2, D2, c));
}

TEST_CASE("mapping-space simplices compose") {
  SSet P = std_simplex(0), I = std_simplex(1);
  HomSSet HPI = truncated_hom(P, I, 2);
  HomSSet HII = truncated_hom(I, I, 2);
  SMap to0;
  to0.assignment["0"] = SimplexRef{{}, "0"};
  SimplexRef f = hom_vertex_ref(HPI, P, I, to0);
  SimplexRef g = hom_vertex_ref(HII, I, I, id_map(I));
  SimplexRef gf = hom_compose_ref(P, I, I, HPI, HII, HPI, g, f);
  REQUIRE(gf.deg.empty());
  CHECK(serialize(HPI.vertex_map(P, I, gf.base)) == serialize(to0));
  /* identity degenerated to an edge composes trivially */
  REQUIRE(HPI.hom.cells.size() >= 2);
  REQUIRE(HPI.hom.cells[1].size() == 1);
  SimplexRef fe{{}, HPI.hom.cells[1][0]};
  SimplexRef ge{{0}, g.base};
  SimplexRef gfe = hom_compose_ref(P, I, I, HPI, HII, HPI, ge, fe);
  CHECK(gfe == fe);
}

TEST_CASE("unit shape and point weight validate") {
  ECat A = unit_ecat();
  A.validate();
  EWeight W = representable_weight(A, "o");
  W.validate(A);
}

TEST_CASE("rigged arrow shape and its weights validate") {
  for (int n = 1; n <= 2; ++n) {
    ECat A = dcat_rigged(n, 2);
    A.validate(20000);
    EWeight W = weight_terminal_rigged(n, 2);
    W.validate(A, 20000);
    EWeight R = representable_weight(A, "x");
    R.validate(A, 20000);
    ECat co = ecat_co(A);
    co.validate(20000);
    eweight_co(A, W).validate(co, 20000);
  }
}

TEST_CASE("identity functor and identity transformation validate") {
  ECat A = dcat_rigged(1, 2);
  EFunctor F;
  for (auto& o : A.objects) F.ob[o] = o;
  for (auto& [p, h] : A.hom) F.hom[p] = id_map(h.loose);
  validate_efunctor(A, A, F, 20000);
  ENat n;
  n.comp["x"] = "0";
  n.comp["y"] = "0";
  validate_enat(A, A, F, F, n);
  ENat bad;
  bad.comp["x"] = "0";
  bad.comp["y"] = "missing";
  CHECK_THROWS(validate_enat(A, A, F, F, bad));
}

TEST_CASE("limit over the point shape returns the value") {
  ECat A = unit_ecat();
  EWeight W = representable_weight(A, "o");
  EWeight F;
  ESSet val;
  val.loose = std_simplex(1);
  val.tight_vertices = {"1"};
  F.ob["o"] = val;
  F.act[{"o", "o"}] =
      EAction{[](const SimplexRef&, const SimplexRef& w) -> std::optional<SimplexRef> {
        return w;
      }};
  F.validate(A);
  WeightedLimit L = weighted_limit(A, W, F);
  CHECK(L.limit.loose.cells[0].size() == 2);
  CHECK(nondeg_total(L.limit.loose) == 3);
  CHECK(L.limit.tight_vertices.size() == 1);
  SMap y = yoneda_comparison(L, A, "o", F);
  CHECK(smap_iso(L.limit.loose, F.at("o").loose, y));
  CHECK(!limit_reflection_witness(L, W, F));
  DualityReport d = duality_limit_check(A, W, F);
  CHECK(d.iso);
  CHECK(d.tight_match);
}

TEST_CASE("limit over a discrete pair is the product") {
  ECat A = discrete_ecat("a", "b");
  A.validate();
  ESSet ia, ib;
  ia.loose = std_simplex(1);
  ia.tight_vertices = {"0"};
  ib.loose = std_simplex(1);
  ib.tight_vertices = {"1"};
  ESSet pt = chordate(std_simplex(0));
  EWeight W = discrete_weight(A, pt, pt);
  W.validate(A);
  EWeight F = discrete_weight(A, ia, ib);
  WeightedLimit L = weighted_limit(A, W, F);
  CHECK(L.limit.loose.cells[0].size() == 4);
  CHECK(L.limit.loose.cells[1].size() == 5);
  CHECK(L.limit.loose.cells[2].size() == 2);
  CHECK(L.limit.tight_vertices.size() == 1);
  EMap pa = limit_projection(L, W, F, "a", "0");
  CHECK(pa.tight);
  validate_emap(L.limit, ia, pa);
  CHECK(!limit_reflection_witness(L, W, F));
  DualityReport d = duality_limit_check(A, W, F);
  CHECK(d.iso);
  CHECK(d.tight_match);
}

TEST_CASE("representable weight recovers the diagram value on the arrow shape") {
  ECat A = dcat_rigged(2, 2);
  EWeight F = weight_terminal_rigged(2, 2);
  for (auto& a0 : {std::string("x"), std::string("y")}) {
    EWeight W = representable_weight(A, a0);
    WeightedLimit L = weighted_limit(A, W, F);
    SMap y = yoneda_comparison(L, A, a0, F);
    CHECK(smap_iso(L.limit.loose, F.at(a0).loose, y));
    CHECK(!limit_reflection_witness(L, W, F));
  }
}

TEST_CASE("interval diagram on the rigged arrow has a unique marked family") {
  for (auto tights : std::vector<std::set<std::string>>{{"0", "1"}, {"1"}}) {
    FdECat K = point_interval(tights);
    K.cat.validate(5000);
    ECat A = dcat_rigged(1, 2);
    EFunctor F = interval_diagram(K);
    validate_efunctor(A, K.cat, F, 5000);
    EWeight D = fd_restrict_weight(K, A, F);
    D.validate(A, 5000);
    EWeight W = weight_terminal_rigged(1, 2);
    WeightedLimit L = weighted_limit(A, W, D);
    CHECK(L.limit.loose.cells[0].size() == 1);
    CHECK(nondeg_total(L.limit.loose) == 1);
    CHECK(L.limit.tight_vertices.size() == 1);
    CHECK(!limit_reflection_witness(L, W, D));
    DualityReport d = duality_limit_check(A, W, D);
    CHECK(d.iso);
    CHECK(d.tight_match);
  }
  /* a loose terminal mark breaks tightness of the diagram and of the family */
  FdECat K = point_interval({"0"});
  ECat A = dcat_rigged(1, 2);
  EFunctor F = interval_diagram(K);
  CHECK_THROWS(validate_efunctor(A, K.cat, F, 5000));
  EWeight D = fd_restrict_weight(K, A, F);
  CHECK_THROWS(D.validate(A, 5000));
  WeightedLimit L = weighted_limit(A, weight_terminal_rigged(1, 2), D);
  CHECK(L.limit.loose.cells[0].size() == 1);
  CHECK(L.limit.tight_vertices.empty());
}

TEST_CASE("nerve shape composes chains of transformations") {
  NerveECat N = nerve_ecat({{"L", fincat_linear(1)}, {"I", fincat_walking_iso()}},
                           tight_all(), 2, 200000);
  N.cat.validate(5000);
  CHECK(N.cat.hom_of("L", "I").loose.cells[0].size() == 4);
  CHECK(N.cat.hom_of("I", "L").loose.cells[0].size() == 2);
  for (auto& v : N.cat.hom_of("L", "I").loose.cells[0]) {
    CFunctor F = nerve_vertex_functor(N, "L", "I", v);
    validate_cfunctor(N.cats.at("L"), N.cats.at("I"), F);
  }
}

TEST_CASE("transformation chains round-trip through nerve refs") {
  FunctorCat fc = functor_cat(fincat_linear(1), fincat_linear(1));
  SSet N2 = nerve(fc.cat, 2);
  for (int n = 0; n < (int)N2.cells.size(); ++n)
    for (auto& id : N2.cells[n]) {
      SimplexRef r{{}, id};
      CHECK(ref_of_natchain(fc, natchain_of_ref(fc, r, n)) == r);
      SimplexRef s{{n}, id};
      CHECK(ref_of_natchain(fc, natchain_of_ref(fc, s, n + 1)) == s);
    }
}

TEST_CASE("bounded ordinal categories have the expected maps") {
  FinCat full = ordinal_fincat(2, true, false);
  CHECK(full.objects.size() == 4);
  CHECK(full.morphisms.size() == 35);
  CHECK(full.hom("[0]", "[2]").size() == 3);
  CHECK(full.hom("[2]", "[2]").size() == 10);
  CHECK(full.hom("[-1]", "[2]").size() == 1);
  CHECK(full.hom("[2]", "[-1]").empty());
  FinCat top = ordinal_fincat(2, false, true);
  CHECK(top.objects.size() == 3);
  CHECK(top.morphisms.size() == 19);
  CHECK(top.hom("[2]", "[2]").size() == 6);
  int p, q;
  std::vector<int> v;
  parse_ordinal_morphism("2>1:0.0.1", p, q, v);
  CHECK(p == 2);
  CHECK(q == 1);
  CHECK(v == std::vector<int>{0, 0, 1});
  CHECK(ordinal_sum_mor("0>1:1", "0>0:0", 2) == std::string("1>2:1.2"));
  CHECK(ordinal_sum_mor("1>1:0.1", "0>0:0", 2) == std::string("2>2:0.1.2"));
  CHECK(!ordinal_sum_mor("1>1:0.1", "1>1:0.1", 2));
}

TEST_CASE("the monoid shape validates and composes by ordinal sum") {
  MndECat M = mnd_ecat(2, 2);
  const SSet& H = M.cat.hom_of("+", "+").loose;
  CHECK(H.cells[0].size() == 4);
  CHECK(H.cells[1].size() == 31);
  CHECK(H.cells[2].size() == 362);
  M.cat.validate(20000);
  auto v = M.cat.compose2("+", "+", "+", SimplexRef{{}, "[0]"}, SimplexRef{{}, "[0]"});
  REQUIRE(v);
  CHECK(*v == SimplexRef{{}, "[1]"});
  CHECK(!M.cat.compose2("+", "+", "+", SimplexRef{{}, "[1]"}, SimplexRef{{}, "[1]"}));
  auto e = M.cat.compose2("+", "+", "+", SimplexRef{{}, "0>1:0"}, SimplexRef{{}, "-1>0:"});
  REQUIRE(e);
  CHECK(*e == SimplexRef{{}, "0>2:0"});
}

TEST_CASE("the algebra weight validates over the monoid shape") {
  MndECat M = mnd_ecat(2, 2);
  EmWeightData WD = em_weight(M, 2);
  const SSet& V = WD.weight.at("+").loose;
  CHECK(V.cells[0].size() == 3);
  CHECK(V.cells[1].size() == 16);
  CHECK(V.cells[2].size() == 110);
  CHECK(WD.weight.at("+").tight_vertices == std::set<std::string>{"[0]"});
  WD.weight.validate(M.cat, 20000);
  auto r = WD.weight.apply("+", "+", SimplexRef{{}, "-1>0:"}, SimplexRef{{0}, "[0]"});
  REQUIRE(r);
  CHECK(*r == SimplexRef{{}, "0>1:1"});
  representable_weight(M.cat, "+").validate(M.cat, 20000);
}

TEST_CASE("strict monad validation accepts lawful data and rejects violations") {
  validate_strict_monad(identity_monad(fincat_linear(1)));
  validate_strict_monad(const_top_monad());
  validate_strict_monad(twist_monad(true));
  CHECK_THROWS(validate_strict_monad(twist_monad(false)));
}

TEST_CASE("monad diagrams over the monoid shape are functorial") {
  MndECat mnd = mnd_ecat(2, 2);
  StrictMonad I = identity_monad(fincat_linear(1));
  MonadDiagram DI = strict_monad_diagram(mnd, I);
  CHECK(DI.arrow_nat.at("0>1:0") == nat_identity(I.C, I.C, cf_identity(I.C)));
  StrictMonad K = const_top_monad();
  MonadDiagram DK = strict_monad_diagram(mnd, K);
  CHECK(DK.arrow_nat.at("-1>0:").comp.at("0") == "0<=1");
  CHECK(DK.arrow_nat.at("1>0:0.0").comp.at("0") == "1<=1");
  strict_monad_diagram(mnd, twist_monad(true));
}

TEST_CASE("postcomposition weights validate over the monoid shape") {
  MndECat mnd = mnd_ecat(2, 2);
  for (auto M : {identity_monad(fincat_linear(1)), const_top_monad(), twist_monad(true)}) {
    MonadDiagram D = strict_monad_diagram(mnd, M);
    EWeight VX = monad_hom_weight(D, M.C, 2);
    VX.validate(mnd.cat, 20000);
  }
}

TEST_CASE("algebra categories match hand oracles") {
  StrictMonad I = identity_monad(fincat_linear(1));
  CHECK((bool)iso_fincat(em_category(I), I.C));
  StrictMonad K = const_top_monad();
  FinCat EK = em_category(K);
  CHECK(EK.objects.size() == 1);
  CHECK(EK.morphisms.size() == 1);
  StrictMonad Z = twist_monad(true);
  CHECK((bool)iso_fincat(em_category(Z), zmod2()));
}

TEST_CASE("bounded and edge-level family checks agree on nerve targets") {
  MndECat mnd = mnd_ecat(2, 2);
  StrictMonad K = const_top_monad();
  MonadDiagram D = strict_monad_diagram(mnd, K);
  EmWeightData WD = em_weight(mnd, 2);
  EWeight VX = monad_hom_weight(D, K.C, 2);
  WeightedLimit L1 = weighted_limit(mnd.cat, WD.weight, VX, 5000000, 1);
  WeightedLimit Lf = weighted_limit(mnd.cat, WD.weight, VX, 5000000, -1);
  REQUIRE(L1.limit.loose.cells.size() == Lf.limit.loose.cells.size());
  for (size_t n = 0; n < L1.limit.loose.cells.size(); ++n)
    CHECK(L1.limit.loose.cells[n] == Lf.limit.loose.cells[n]);
  CHECK(L1.limit.loose.cells[0].size() == 1);
  CHECK(nondeg_total(L1.limit.loose) == 1);
  CHECK(L1.limit.tight_vertices.size() == 1);
}

TEST_CASE("limits exceed a tiny budget") {
  MndECat mnd = mnd_ecat(2, 2);
  StrictMonad K = const_top_monad();
  MonadDiagram D = strict_monad_diagram(mnd, K);
  EmWeightData WD = em_weight(mnd, 2);
  EWeight VX = monad_hom_weight(D, K.C, 2);
  CHECK_THROWS(weighted_limit(mnd.cat, WD.weight, VX, 10));
}

TEST_CASE("algebra objects satisfy the universal property") {
  for (auto M : {identity_monad(fincat_linear(1)), const_top_monad(), twist_monad(true)}) {
    EmCheckReport rep = em_universal_property_check(M, em_category(M), 2);
    INFO(rep.witness);
    CHECK(rep.laws_ok);
    CHECK(rep.candidate_matches_oracle);
    CHECK(rep.iso_ok);
    CHECK(rep.tight_ok);
    CHECK(rep.forgetful_tight);
    CHECK(rep.forgetful_reflects);
    CHECK(rep.ok());
    CHECK(rep.probes.size() == 2);
  }
}

TEST_CASE("wrong candidates and broken laws are rejected") {
  StrictMonad K = const_top_monad();
  EmCheckReport rep = em_universal_property_check(K, fincat_discrete({"a", "b"}), 2);
  CHECK(rep.laws_ok);
  CHECK(!rep.candidate_matches_oracle);
  CHECK(rep.iso_ok);
  CHECK(!rep.ok());
  EmCheckReport bad = em_universal_property_check(twist_monad(false), zmod2(), 2);
  CHECK(!bad.laws_ok);
  CHECK(!bad.ok());
  CHECK(!bad.witness.empty());
}
