#pragma once
#include <array>

#include "rigged/sset.hpp"

namespace rigged {

/* Finite category: explicit object/morphism lists with a total composition
   table, validated exhaustively. */
struct FinCat {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::map<std::string, std::string> dom, cod;
  std::map<std::string, std::string> identity;                      // object -> id morphism
  std::map<std::pair<std::string, std::string>, std::string> comp;  // (g, f) -> g∘f

  const std::string& dom_of(const std::string& m) const;
  const std::string& cod_of(const std::string& m) const;
  const std::string& id_of(const std::string& o) const;
  const std::string& compose(const std::string& g, const std::string& f) const;  // g after f
  bool is_id(const std::string& m) const;
  bool has_object(const std::string& o) const;
  bool has_morphism(const std::string& m) const;
  std::optional<std::string> inverse(const std::string& m) const;
  bool is_iso(const std::string& m) const { return inverse(m).has_value(); }
  std::vector<std::string> hom(const std::string& a, const std::string& b) const;
  void add_object(const std::string& o);
  void add_morphism(const std::string& m, const std::string& d, const std::string& c);
  void sort_all();
  void validate() const;
};

FinCat fincat_linear(int n);                                // the poset 0 -> 1 -> ... -> n
FinCat fincat_discrete(const std::vector<std::string>& obs);
/* Poset category on the reflexive-transitive closure of the given relation;
   morphism ids are "a<=b". */
FinCat fincat_poset(const std::vector<std::string>& obs,
                    const std::vector<std::pair<std::string, std::string>>& rel);
FinCat fincat_walking_iso();
FinCat fincat_opposite(const FinCat& C);

struct CFunctor {
  std::map<std::string, std::string> ob, mor;
  bool operator==(const CFunctor& o) const { return ob == o.ob && mor == o.mor; }
};
void validate_cfunctor(const FinCat& A, const FinCat& B, const CFunctor& F);
CFunctor cf_identity(const FinCat& C);
CFunctor cf_compose(const CFunctor& G, const CFunctor& F);

struct CNat {
  std::map<std::string, std::string> comp;  // object of source cat -> morphism of target
  bool operator==(const CNat& o) const { return comp == o.comp; }
};
void validate_cnat(const FinCat& A, const FinCat& B, const CFunctor& F, const CFunctor& G,
                   const CNat& n);
CNat nat_identity(const FinCat& A, const FinCat& B, const CFunctor& F);
CNat nat_vcomp(const FinCat& B, const CNat& n2, const CNat& n1);
CNat nat_apply(const CFunctor& H, const CNat& n);                       // H applied to components
CNat nat_restrict(const FinCat& A0, const CFunctor& K, const CNat& n);  // reindex along K
CNat nat_inverse(const FinCat& B, const CNat& n);
bool nat_iso(const FinCat& B, const CNat& n);

struct Adjunction {
  CFunctor left;   // F : A -> B
  CFunctor right;  // U : B -> A
  CNat unit;       // 1_A => U F, components in A
  CNat counit;     // F U => 1_B, components in B
};
void validate_adjunction(const FinCat& A, const FinCat& B, const Adjunction& adj);

/* Adjoint search via universal arrows: a right adjoint exists iff each comma
   fiber F|b has a terminal object.  Ties broken by least identifier. */
std::optional<Adjunction> search_right_adjoint(const FinCat& A, const FinCat& B,
                                               const CFunctor& F);
/* Left adjoint L to F : A -> B; the returned adjunction has left = L : B -> A,
   right = F, unit in B, counit in A. */
std::optional<Adjunction> search_left_adjoint(const FinCat& A, const FinCat& B,
                                              const CFunctor& F);

bool is_isofibration(const FinCat& E, const FinCat& B, const CFunctor& p);
/* Least-identifier iso lift of phi (an iso of B starting at p(e)) to an iso
   of E starting at e. */
std::string iso_lift(const FinCat& E, const FinCat& B, const CFunctor& p,
                     const std::string& phi, const std::string& e);
/* Right adjoint with identity counit (resp. left adjoint with identity unit),
   normalized through iso lifting.  Throws if p is not an isofibration. */
std::optional<Adjunction> is_lali(const FinCat& E, const FinCat& B, const CFunctor& p);
std::optional<Adjunction> is_rali(const FinCat& E, const FinCat& B, const CFunctor& p);

struct CommaCat {
  FinCat cat;
  CFunctor projA, projB;
  std::map<std::string, std::array<std::string, 3>> obj_parts;  // id -> (a, b, phi)
  std::map<std::string, std::array<std::string, 2>> mor_parts;  // id -> (alpha, beta)
  std::string object_id(const std::string& a, const std::string& b,
                        const std::string& phi) const;
  std::string morphism_id(const std::string& alpha, const std::string& beta,
                          const std::string& src, const std::string& tgt) const;
};
CommaCat comma(const FinCat& A, const FinCat& B, const FinCat& C, const CFunctor& F,
               const CFunctor& G);
CommaCat arrow_cat(const FinCat& C);  // comma(1_C, 1_C); projA = dom, projB = cod

struct PullbackCat {
  FinCat cat;
  CFunctor projA, projB;
  std::map<std::pair<std::string, std::string>, std::string> obj_lookup, mor_lookup;
  const std::string& object_id(const std::string& a, const std::string& b) const;
  const std::string& morphism_id(const std::string& f, const std::string& g) const;
};
PullbackCat fincat_pullback(const FinCat& A, const FinCat& B, const FinCat& C,
                            const CFunctor& F, const CFunctor& G);
PullbackCat fincat_product(const FinCat& A, const FinCat& B);

/* Mate top∘U1 => U2∘bottom of a commuting square of left adjoints
   (adj1.left: A1 -> B1, adj2.left: A2 -> B2, bottom∘adj1.left = adj2.left∘top). */
CNat mate_of_square(const FinCat& A1, const FinCat& B1, const FinCat& A2, const FinCat& B2,
                    const CFunctor& top, const CFunctor& bottom, const Adjunction& adj1,
                    const Adjunction& adj2);
bool mate_is_iso(const FinCat& A2, const CNat& mate);

struct LaLaliReport {
  bool left_adjoint = false;  // F admits a right adjoint
  bool comma_lali = false;    // the comma projection admits the lali structure
  std::optional<Adjunction> adj;        // F -| U when present
  std::optional<Adjunction> comma_adj;  // p_B -| u with identity counit, built from adj
  std::string witness;
};
LaLaliReport la_iff_lali_check(const FinCat& A, const FinCat& B, const CFunctor& F);

struct MateTransferReport {
  bool la_morphism = false;          // mate of (top, bottom) iso
  bool lali_morphism = false;        // mate of the induced comma square iso
  bool projection_equation = false;  // comma mate projects onto the adjoint mate
  CNat theta;                        // mate on the adjoint side
  CNat comma_mate;                   // mate on the comma side
  std::string witness;
};
MateTransferReport mate_transfer_check(const FinCat& A1, const FinCat& B1, const FinCat& A2,
                                       const FinCat& B2, const CFunctor& top,
                                       const CFunctor& bottom, const Adjunction& adj1,
                                       const Adjunction& adj2);

bool is_cartesian_morphism(const FinCat& E, const FinCat& B, const CFunctor& p,
                           const std::string& psi);
bool is_grothendieck_fibration(const FinCat& E, const FinCat& B, const CFunctor& p);
/* Least-identifier cartesian lift of phi : b -> p(e) ending at e. */
std::string cartesian_lift(const FinCat& E, const FinCat& B, const CFunctor& p,
                           const std::string& phi, const std::string& e);

/* Nerve (chains of composable non-identity morphisms) and its inverse. */
SSet nerve(const FinCat& C, int k);
SMap nerve_map(const FinCat& C, const FinCat& D, const CFunctor& F, int k);
/* Normal form of a composable entry list that may contain identities. */
SimplexRef nerve_chain_ref(const FinCat& C, const std::vector<std::string>& entries);
/* Entry list of a nerve simplex at dimension n, identities restored at the
   degenerate slots. */
std::vector<std::string> nerve_expand_ref(const FinCat& C, const SimplexRef& r, int n);

struct HtpyCat {
  FinCat cat;
  std::map<std::string, std::string> edge_mor;  // 1-cell -> morphism (or identity)
  /* morphism -> (source vertex, normal-form edge word) */
  std::map<std::string, std::pair<std::string, std::vector<std::string>>> words;
  std::string path_morphism(const std::vector<std::string>& edges) const;  // nonempty path
};
/* Free category on the 1-skeleton modulo 2-cell relations, computed with a
   length-reducing confluent rewriting system; throws if completion or the
   normal-form enumeration exceeds the budget. */
HtpyCat homotopy_cat(const SSet& S, size_t budget = 10000);
CFunctor hfunctor(const SSet& S, const SSet& T, const SMap& f, const HtpyCat& hS,
                  const HtpyCat& hT);
std::optional<CFunctor> iso_fincat(const FinCat& A, const FinCat& B);

struct FunctorCat {
  FinCat cat;
  std::vector<CFunctor> objs;                     // indexed by position in cat.objects
  std::map<std::string, CNat> nats;               // morphism id -> components
  std::map<std::string, int> obj_index;           // serialized functor -> index
  std::map<std::string, std::string> nat_lookup;  // "i|j|serialized nat" -> morphism id
  int index_of(const CFunctor& F) const;
  const std::string& nat_id(int i, int j, const CNat& n) const;
};
std::string serialize_cfunctor(const CFunctor& F);
std::string serialize_cnat(const CNat& n);
FunctorCat functor_cat(const FinCat& J, const FinCat& A, size_t budget = 10000);
/* Postcomposition with f as a functor A^J -> B^J. */
CFunctor postcompose_functor_cat(const CFunctor& f, const FunctorCat& AJ,
                                 const FunctorCat& BJ);

struct ResData {
  SSet cone;            // the cone on J
  HtpyCat hJ, hcone;
  CFunctor incl;        // h(J) -> h(cone)
  FunctorCat AJ, Acone;
  CFunctor res;         // A^{h(cone)} -> A^{h(J)}
};
ResData res_restriction(const FinCat& A, const SSet& J, size_t budget = 10000);

struct Cone {
  std::string apex;
  std::map<std::string, std::string> legs;  // object of J -> morphism of A
};
std::vector<Cone> enumerate_cones(const FinCat& A, const FinCat& J, const CFunctor& d);
std::optional<Cone> find_terminal_cone(const FinCat& A, const FinCat& J, const CFunctor& d);

struct JLimReport {
  bool res_lali = false;
  bool has_limits = false;
  std::string witness;
};
JLimReport jlim_check(const FinCat& A, const SSet& J, size_t budget = 10000);

struct JLimSquareReport {
  bool lali_morphism = false;
  bool preserves_limits = false;
  std::string witness;
};
/* Both categories must admit the limits in question. */
JLimSquareReport jlim_square_check(const FinCat& A, const FinCat& B, const CFunctor& f,
                                   const SSet& J, size_t budget = 10000);

struct LeibnizData {
  CommaCat arrows;  // arrow category of E
  CommaCat target;  // B down p
  CFunctor leibniz; // E^[1] -> B|p
};
LeibnizData leibniz_target(const FinCat& E, const FinCat& B, const CFunctor& p);

struct CartReport {
  bool leibniz_lali = false;
  bool fibration = false;
  std::string witness;
};
CartReport cart_check(const FinCat& E, const FinCat& B, const CFunctor& p);

struct CartSquareReport {
  bool lali_morphism = false;
  bool preserves_cartesian = false;
  std::string witness;
};
CartSquareReport cart_square_check(const FinCat& E1, const FinCat& B1, const CFunctor& p1,
                                   const FinCat& E2, const FinCat& B2, const CFunctor& p2,
                                   const CFunctor& s, const CFunctor& t);

/* Vertical functor that is both an isofibration and a left adjoint. */
struct LaIsofib {
  FinCat c1, c2;
  CFunctor p;
};

struct PullbackLaResult {
  PullbackCat p1, p2;
  CFunctor P;              // induced functor p1 -> p2
  Adjunction adjA, adjB, adjC;  // oracle adjunctions of the three legs
  CNat lambdaF, lambdaG;   // mates of the two input squares
  CNat chi;                // cartesian lift, components in b1
  CFunctor x;              // domain of chi
  CNat gammabar;           // lifted 2-cell p_B1 => x∘P
  Adjunction adj;          // constructed P -| r
  bool lambdaG_iso = false;
  bool triangles_ok = false;
  bool oracle_ok = false;
  bool pa_morphism_ok = false;
  std::string report;
};
/* Pullback of the square F : A => C along the square G : B => C, where G is a
   morphism of left adjoints with fibration components; builds the right
   adjoint of the induced vertical functor explicitly. */
PullbackLaResult pullback_la(const LaIsofib& A, const LaIsofib& B, const LaIsofib& C,
                             const CFunctor& F1, const CFunctor& F2, const CFunctor& G1,
                             const CFunctor& G2);
/* Probe: does p_A reflect morphisms of left adjoints on the given square? */
struct ReflectProbe {
  bool q_morphism = false;
  bool paq_morphism = false;
};
ReflectProbe pullback_la_reflect_probe(const PullbackLaResult& R, const LaIsofib& A,
                                       const LaIsofib& D, const Adjunction& adjD,
                                       const CFunctor& q1, const CFunctor& q2);

struct JointReflectReport {
  bool q_lali_morphism = false;
  bool all_projections = false;
  bool mate_equation = false;  // mate(proj∘q) equals proj applied to mate(q)
};
/* Binary product cone of lali-isofibrations: do the projections jointly
   reflect morphisms of lalis at the probe square q? */
JointReflectReport jointly_reflect_lali_check(
    const LaIsofib& L1, const LaIsofib& L2, const Adjunction& lali1, const Adjunction& lali2,
    const FinCat& C1, const FinCat& C2, const CFunctor& C, const Adjunction& laliC,
    const CFunctor& q1, const CFunctor& q2);

std::string dot_fincat(const FinCat& C, const std::string& name);

}  // namespace rigged
