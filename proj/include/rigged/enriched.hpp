#pragma once
#include <array>
#include <functional>
#include <memory>

#include "rigged/catkit.hpp"
#include "rigged/fdelta.hpp"

namespace rigged {

/* s_w(r) for a strictly decreasing degeneracy word w. */
SimplexRef apply_word(SimplexRef r, const std::vector<int>& w);
/* Inverse of apply_word when it exists: the unique x with s_w(x) == r. */
std::optional<SimplexRef> strip_word(const SimplexRef& r, const std::vector<int>& w);

/* Vertex value list of a ref over a complex whose vertex ids are integers
   (standard simplices and their subcomplexes): the monotone map it carries. */
std::vector<int> monotone_of_ref(const SSet& S, const SimplexRef& r);
/* r pulled back along the monotone operator with the given value list. */
SimplexRef act_by_monotone(const SSet& S, const SimplexRef& r, const std::vector<int>& alpha);

/* Checks that f is a levelwise bijection on nondegenerate cells (and a valid
   map), i.e. an isomorphism of simplicial sets. */
bool smap_iso(const SSet& S, const SSet& T, const SMap& f);

/* Composite of equidimensional mapping-space simplices g after f. */
SimplexRef hom_compose_ref(const SSet& S, const SSet& T, const SSet& U,
                           const HomSSet& HST, const HomSSet& HTU, const HomSSet& HSU,
                           const SimplexRef& g, const SimplexRef& f);

/* Levelwise pairing of simplex refs; empty result marks entries outside a
   partial table (bounded models of infinite homs). */
struct EAction {
  std::function<std::optional<SimplexRef>(const SimplexRef&, const SimplexRef&)> fn;

  std::optional<SimplexRef> operator()(const SimplexRef& u, const SimplexRef& v) const {
    return fn ? fn(u, v) : std::nullopt;
  }
  bool defined() const { return (bool)fn; }
};

/* Pairing tabulated as an SMap on (a truncation of) a product complex. */
EAction action_from_smap(std::shared_ptr<const ProductSSet> prod,
                         std::shared_ptr<const SSet> A, std::shared_ptr<const SSet> B,
                         std::shared_ptr<const SMap> m);
/* Pairing by currying: per nondegenerate first-argument cell u a full map
   Delta^{dim u} x B -> target. */
EAction action_from_curried(std::shared_ptr<const std::map<std::string, SMap>> curried,
                            std::shared_ptr<const SSet> B,
                            const std::map<std::string, int>& first_dims);

/* Truncated enhanced simplicial category: hom objects carry simplices up to
   dimension k; composition acts levelwise on refs of any dimension. */
struct ECat {
  int k = 2;
  std::vector<std::string> objects;
  std::map<std::pair<std::string, std::string>, ESSet> hom;
  std::map<std::array<std::string, 3>, EAction> comp;  // {a,b,c}: hom(b,c) x hom(a,b) -> hom(a,c)
  std::map<std::string, std::string> id;               // object -> tight identity vertex

  const ESSet& hom_of(const std::string& a, const std::string& b) const;
  SimplexRef id_ref(const std::string& a, int n) const;
  /* g in hom(b,c) composed with f in hom(a,b), both n-refs. */
  std::optional<SimplexRef> compose2(const std::string& a, const std::string& b,
                                     const std::string& c, const SimplexRef& g,
                                     const SimplexRef& f) const;
  /* Units, associativity, and tightness of composites of tight cells, checked
     levelwise on refs of dimension <= k; throws on the first failure.  The cap
     bounds the number of associativity triples per object quadruple. */
  void validate(size_t max_triples = 250000) const;
};

/* Enhanced functor into enhanced simplicial sets, stored uncurried: values
   plus a levelwise action hom(a,b) x ob(a) -> ob(b).  Serves as both weight
   and diagram.  Values must carry cells in every dimension where the true
   object has nondegenerate simplices reachable from weight-indexed maps. */
struct EWeight {
  std::map<std::string, ESSet> ob;
  std::map<std::pair<std::string, std::string>, EAction> act;
  /* Objects listed here are truncations of larger complexes (mapping spaces):
     families out of them are only defined on product cells up to the recorded
     dimension.  Absent entries mean the value is the honest full complex. */
  std::map<std::string, int> dom_cut;

  const ESSet& at(const std::string& a) const;
  int cut_of(const std::string& a) const;
  std::optional<SimplexRef> apply(const std::string& a, const std::string& b,
                                  const SimplexRef& u, const SimplexRef& w) const;
  /* Unit/functoriality/tightness checks against the indexing category. */
  void validate(const ECat& A, size_t max_triples = 250000) const;
};

/* ob(b) = hom(a0, b) with the composition action. */
EWeight representable_weight(const ECat& A, const std::string& a0);

/* One enumerated cell of a weighted limit: per object a full map
   Delta^m x W(a) -> F(a), stored on the product complex. */
struct LimitFamily {
  std::map<std::string, SMap> comp;
};
std::string serialize_family(const LimitFamily& f);

struct WeightedLimit {
  int k = 2;
  ESSet limit;
  /* families[m]: nondegenerate m-cell id -> family */
  std::vector<std::map<std::string, LimitFamily>> families;
  std::vector<std::map<std::string, std::string>> index;  // serialized family -> cell id
  /* doms[m][a] = Delta^m x W(a) */
  std::vector<std::map<std::string, ProductSSet>> doms;
};

/* Limit of F weighted by W over A, computed as the enhanced natural family
   object and truncated at A.k; throws if the search exceeds the budget.
   check_dim >= 0 caps the dimension of naturality instances; sound when every
   value of F is determined by its edges (nerves and their truncations). */
WeightedLimit weighted_limit(const ECat& A, const EWeight& W, const EWeight& F,
                             size_t budget = 5000000, int check_dim = -1);

/* Projection of the limit at a weight simplex: the vertex v of W(a) induces
   limit -> F(a); tight when v is tight. */
EMap limit_projection(const WeightedLimit& L, const EWeight& W, const EWeight& F,
                      const std::string& a, const std::string& v);
/* Probes every loose limit vertex: tight iff all projections at tight weight
   vertices are tight.  Returns the first violating vertex, if any. */
std::optional<std::string> limit_reflection_witness(const WeightedLimit& L, const EWeight& W,
                                                    const EWeight& F);

/* Canonical comparison for a representable weight: the limit maps to F(a0). */
SMap yoneda_comparison(const WeightedLimit& L, const ECat& A, const std::string& a0,
                       const EWeight& F);

ECat ecat_co(const ECat& K);
EWeight eweight_co(const ECat& K, const EWeight& W);

struct DualityReport {
  bool iso = false;
  bool tight_match = false;
  std::string witness;
};
/* Computes the limit twice, directly and through the co-dual category, and
   matches the second against the opposite of the first cell by cell. */
DualityReport duality_limit_check(const ECat& A, const EWeight& W, const EWeight& F,
                                  size_t budget = 5000000, int check_dim = -1);

/* Enhanced functors / natural transformations between truncated categories. */
struct EFunctor {
  std::map<std::string, std::string> ob;
  std::map<std::pair<std::string, std::string>, SMap> hom;
};
void validate_efunctor(const ECat& A, const ECat& B, const EFunctor& F,
                       size_t max_triples = 250000);

struct ENat {
  std::map<std::string, std::string> comp;  // object -> vertex of hom_B(Fa, Ga)
};
void validate_enat(const ECat& A, const ECat& B, const EFunctor& F, const EFunctor& G,
                   const ENat& n);

/* Two-object category x, y with hom(x,y) the boundary of the n-simplex, only
   its terminal vertex tight; hom(y,x) empty. */
ECat dcat_rigged(int n, int k);
/* x |-> point, y |-> n-simplex with terminal vertex tight, acting by
   restriction along the boundary inclusion. */
EWeight weight_terminal_rigged(int n, int k);

/* Full subcategory of enhanced simplicial sets on the given objects: homs are
   the truncated mapping spaces, composition the mapping-space one. */
struct FdECat {
  ECat cat;
  std::map<std::string, ESSet> val;
  std::map<std::pair<std::string, std::string>, std::shared_ptr<const EHom>> homdata;
};
FdECat fdelta_full_sub_ecat(const std::vector<std::pair<std::string, ESSet>>& objs, int k);
/* Diagram weight: values of the chosen objects, action by evaluating the
   structure cells selected by F. */
EWeight fd_restrict_weight(const FdECat& K, const ECat& A, const EFunctor& F);

/* Category of nerves: hom(X,Y) is the truncated nerve of the functor
   category, composition the chain-level horizontal composition; a vertex is
   tight when the selector accepts its functor. */
using TightSel = std::function<bool(const std::string&, const std::string&, const CFunctor&)>;
struct NerveECat {
  ECat cat;
  std::map<std::string, FinCat> cats;
  std::map<std::pair<std::string, std::string>, std::shared_ptr<const FunctorCat>> fc;
};
NerveECat nerve_ecat(const std::vector<std::pair<std::string, FinCat>>& obs,
                     const TightSel& sel, int k, size_t budget = 200000);
TightSel tight_all();
/* Functor classified by a vertex of hom(a,b). */
CFunctor nerve_vertex_functor(const NerveECat& N, const std::string& a, const std::string& b,
                              const std::string& v);

/* Chain of functors and connecting transformations behind a nerve-hom ref. */
struct NatChain {
  std::vector<CFunctor> fs;
  std::vector<CNat> taus;  // taus[i] : fs[i] => fs[i+1]
};
NatChain natchain_of_ref(const FunctorCat& FC, const SimplexRef& r, int n);
SimplexRef ref_of_natchain(const FunctorCat& FC, const NatChain& ch);

/* Horizontal composition of natural transformation chains, levelwise. */
CNat nat_hcomp(const FinCat& mid, const FinCat& tgt, const CFunctor& G2, const CNat& beta,
               const CFunctor& F1, const CNat& alpha);

/* Bounded ordinal categories.  Objects are "[p]" for -1 <= p <= bound (the
   empty ordinal only when with_empty); morphisms "p>q:v0.v1..." are the
   order-preserving maps, top-preserving when top_only (then p,q >= 0). */
FinCat ordinal_fincat(int bound, bool with_empty, bool top_only);
std::string ordinal_object(int p);
std::string ordinal_morphism(int p, int q, const std::vector<int>& values);
/* dom/cod/value list of an ordinal morphism id. */
void parse_ordinal_morphism(const std::string& m, int& p, int& q, std::vector<int>& values);
/* Ordinal sum [p] ⊕ [q] = [p+q+1] on maps; empty result when the sum leaves
   the bound. */
std::optional<std::string> ordinal_sum_mor(const std::string& f, const std::string& g, int bound);

/* One-object category with hom the nerve of the bounded ordinal category with
   the empty ordinal, composed by ordinal sum; only the identity is tight. */
struct MndECat {
  ECat cat;       // single object "+"
  FinCat delta;   // bounded ordinals with the empty one
  int bound = 2;
  int k = 2;
};
MndECat mnd_ecat(int k, int max_ordinal = 2);

/* Weight + |-> nerve of the bounded top-preserving ordinal category, only [0]
   tight, the monad object acting by ordinal sum on the left. */
struct EmWeightData {
  EWeight weight;
  FinCat delta_top;
  int bound = 2;
};
EmWeightData em_weight(const MndECat& mnd, int max_ordinal = 2);

struct StrictMonad {
  FinCat C;
  CFunctor T;
  CNat unit;  // Id => T
  CNat mult;  // T.T => T
};
/* Functor/naturality plus the three monad laws, exactly. */
void validate_strict_monad(const StrictMonad& M);

/* The one-object diagram carrying the monad: value T^{p+1} at the ordinal
   [p], ordinal maps sent to the transformations generated by unit and mult;
   functoriality of the assignment is verified exhaustively on the bounded
   category and law violations surface as validation failures. */
struct MonadDiagram {
  StrictMonad M;
  MndECat mnd;
  std::vector<CFunctor> powers;             // powers[j] = T^j, powers[0] identity
  std::map<std::string, CNat> arrow_nat;    // ordinal morphism -> nat between powers
};
MonadDiagram strict_monad_diagram(const MndECat& mnd, const StrictMonad& M);

/* Weight + |-> nerve of Fun(X, C) carried to value_dim, the monad acting by
   postcomposition; tight vertices chosen by sel (default: all). */
EWeight monad_hom_weight(const MonadDiagram& D, const FinCat& X, int value_dim,
                         const std::function<bool(const CFunctor&)>& sel = nullptr,
                         size_t budget = 200000);

/* Strict algebra category: objects "(a|alpha)", morphisms "(f|src|tgt)". */
FinCat em_category(const StrictMonad& M);

struct EmCheckReport {
  bool laws_ok = false;
  bool candidate_matches_oracle = false;
  bool iso_ok = false;        // canonical comparison is an iso for every probe
  bool tight_ok = false;      // and matches tight vertices
  bool forgetful_tight = false;
  bool forgetful_reflects = false;
  std::vector<std::string> probes;
  std::string witness;

  bool ok() const {
    return laws_ok && candidate_matches_oracle && iso_ok && tight_ok && forgetful_tight &&
           forgetful_reflects;
  }
};
/* Universal property of the algebra category as a weighted limit: the
   candidate is matched against the strict algebra category, and for probes X
   in {base category, algebra category} the mapping space into the algebras is
   compared with the weighted family object through the canonical cone, cell
   by cell.  base_sel picks the tight functors X -> C (default: all). */
EmCheckReport em_universal_property_check(
    const StrictMonad& M, const FinCat& candidate, int k,
    const std::function<bool(const CFunctor&)>& base_sel = nullptr, size_t budget = 5000000);

}  // namespace rigged
