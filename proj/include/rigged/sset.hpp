#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigged {

/* A simplex in Eilenberg-Zilber normal form: a strictly decreasing degeneracy
   word applied to a nondegenerate cell id.  deg empty <=> nondegenerate. */
struct SimplexRef {
  std::vector<int> deg;
  std::string base;

  bool operator==(const SimplexRef& o) const { return deg == o.deg && base == o.base; }
  bool operator!=(const SimplexRef& o) const { return !(*this == o); }
  bool operator<(const SimplexRef& o) const {
    if (base != o.base) return base < o.base;
    return deg < o.deg;
  }
};

std::string refstr(const SimplexRef& r);

/* s_i inserted into a strictly decreasing word, keeping normal form. */
std::vector<int> word_insert(std::vector<int> w, int i);

/* Finitely presented simplicial set: nondegenerate cells per dimension plus,
   for every cell of dimension n>=1, its n+1 faces as SimplexRefs. */
struct SSet {
  int top_dim = -1;
  std::vector<std::vector<std::string>> cells;      // cells[n], each sorted
  std::map<std::string, std::vector<SimplexRef>> faces;
  std::map<std::string, int> dims;

  void add_cell(int n, const std::string& id);
  void set_faces(const std::string& id, std::vector<SimplexRef> fs);
  void sort_cells();

  bool has_cell(const std::string& id) const { return dims.count(id) != 0; }
  int dim_of(const std::string& id) const;
  int ref_dim(const SimplexRef& r) const { return dim_of(r.base) + (int)r.deg.size(); }
  size_t cell_count(int n) const { return n >= 0 && n < (int)cells.size() ? cells[n].size() : 0; }
  size_t total_cells() const;
  bool empty() const { return total_cells() == 0; }

  bool ref_valid(const SimplexRef& r) const;
  SimplexRef face(const SimplexRef& r, int i) const;   // d_i in normal form
  SimplexRef degenerate(const SimplexRef& r, int i) const { return {word_insert(r.deg, i), r.base}; }
  SimplexRef vertex(const SimplexRef& r, int j) const;
  std::vector<std::string> vertices_of(const SimplexRef& r) const;
  std::vector<std::string> vertices_of_cell(const std::string& id) const;

  std::vector<SimplexRef> all_refs(int n) const;      // all n-simplices, degenerate included
  void validate() const;                              // throws on broken invariants
};

/* Map of simplicial sets, stored on nondegenerate cells in normal form. */
struct SMap {
  std::map<std::string, SimplexRef> assignment;

  const SimplexRef& at(const std::string& id) const;
  SimplexRef apply(const SSet& tgt, const SimplexRef& r) const;  // extension to degenerate refs
  bool operator==(const SMap& o) const { return assignment == o.assignment; }
  bool operator<(const SMap& o) const { return assignment < o.assignment; }
};

std::string serialize(const SMap& f);
void validate_smap(const SSet& S, const SSet& T, const SMap& f);
SMap id_map(const SSet& S);
SMap compose(const SSet& mid_unused, const SSet& tgt, const SMap& g, const SMap& f);
bool surjective_on_vertices(const SSet& S, const SSet& T, const SMap& f);
bool injective_on_vertices(const SSet& S, const SMap& f);

/* Standard simplices and friends.  Cell ids of std_simplex(n) are vertex
   chains joined by '.', e.g. "0.2.3". */
SSet std_simplex(int n);
std::string chain_id(const std::vector<int>& ch);
std::vector<int> parse_chain(const std::string& id);

struct SubSSet {
  SSet sset;
  SMap incl;
};
SubSSet subcomplex(const SSet& S, const std::set<std::string>& keep);
SSet truncate(const SSet& S, int k);

SubSSet boundary(int n);                 // into std_simplex(n); n=0 gives empty
SubSSet horn(int n, int j);              // Lambda^n_j into std_simplex(n)

/* Monotone map [m]->[n] given by its value list; induces Delta^m -> Delta^n. */
SMap simplex_map(const std::vector<int>& alpha, int n);

/* Normal form of a pair of equidimensional refs: shared degeneracy word plus
   a word-disjoint residual pair. */
struct PairNF {
  std::vector<int> deg;
  SimplexRef a, b;
};
PairNF normalize_pair(SimplexRef u, SimplexRef v);
std::string pair_id(const SimplexRef& u, const SimplexRef& v);

struct ProductSSet {
  SSet sset;
  SMap proj1, proj2;
  std::map<std::string, std::pair<SimplexRef, SimplexRef>> parts;

  SimplexRef pair_ref(const SSet& A, const SSet& B, SimplexRef u, SimplexRef v) const;
  std::pair<SimplexRef, SimplexRef> unpair(const SSet& A, const SSet& B, const SimplexRef& r) const;
};
ProductSSet product(const SSet& A, const SSet& B);
SMap pairing(const SSet& R, const SSet& A, const SSet& B, const ProductSSet& P,
             const SMap& f, const SMap& g);
SMap product_map(const SSet& A, const SSet& B, const ProductSSet& P,
                 const SSet& A2, const SSet& B2, const ProductSSet& Q,
                 const SMap& f, const SMap& g);

struct PullbackSSet {
  SSet sset;
  SMap proj1, proj2;
  std::map<std::string, std::pair<SimplexRef, SimplexRef>> parts;
};
PullbackSSet pullback(const SSet& X, const SSet& Y, const SSet& Z,
                      const SMap& f, const SMap& g);

struct PushoutSSet {
  SSet sset;
  SMap inj1, inj2;   // from X and from Y
};
/* Pushout of X <-f- Z -g-> Y with g a levelwise mono. */
PushoutSSet pushout_mono(const SSet& Z, const SSet& X, const SSet& Y,
                         const SMap& f, const SMap& g);
PushoutSSet disjoint_union(const SSet& X, const SSet& Y);

struct JoinSSet {
  SSet sset;
  SMap incl;          // original complex into the join
  std::string apex;
};
JoinSSet join_cone(const SSet& J);    // Delta^0 * J, apex first
JoinSSet join_cocone(const SSet& J);  // J * Delta^0, apex last

SSet opposite(const SSet& S);
SimplexRef opposite_ref(const SSet& S, const SimplexRef& r);
SMap opposite_smap(const SSet& S, const SMap& f, const SSet& T);

/* All maps S->T, deterministic order; `pre` pins part of the assignment. */
std::vector<SMap> enumerate_maps(const SSet& S, const SSet& T,
                                 const std::map<std::string, SimplexRef>* pre = nullptr,
                                 size_t budget = 0);
std::optional<SMap> find_map(const SSet& S, const SSet& T,
                             const std::map<std::string, SimplexRef>* pre = nullptr);
/* First map found with seed-shuffled candidate order; deterministic per seed. */
std::optional<SMap> random_map(const SSet& S, const SSet& T, uint64_t seed);

std::optional<SMap> iso_ssets(const SSet& S, const SSet& T);

/* Truncated mapping space: n-cells (n<=k) are maps Delta^n x S -> T. */
struct HomSSet {
  SSet hom;
  int k = 0;
  std::vector<SSet> dom;                    // dom[n] = Delta^n x S
  std::vector<ProductSSet> dom_prod;
  std::vector<std::vector<SMap>> level;     // level[n][i] ~ cell "h<n>_<i>"
  std::map<std::string, std::pair<int, int>> index;
  std::vector<std::map<std::string, int>> lookup;   // serialize(map) -> index, per level

  SMap vertex_map(const SSet& S, const SSet& T, const std::string& v) const; // S->T of a 0-cell
};
HomSSet truncated_hom(const SSet& S, const SSet& T, int k);

/* Underlying map Delta^dim x S -> T of an arbitrary hom simplex. */
SMap hom_map_of_ref(const HomSSet& H, const SSet& S, const SSet& T, const SimplexRef& r);
/* Normal form of a map Delta^n x S -> T as a hom simplex. */
SimplexRef hom_ref_of_map(const HomSSet& H, const SSet& S, const SSet& T, const SMap& m, int n);

/* Degenerate n-simplex sitting on a vertex. */
SimplexRef deg_vertex_ref(const std::string& v, int n);

/* Map of hom objects induced by precomposition with sigma : S' -> S. */
SMap hom_precompose(const SSet& S, const SSet& Sp, const SSet& T,
                    const HomSSet& H, const HomSSet& Hp, const SMap& sigma);
/* Map of hom objects induced by postcomposition with tau : T -> T'. */
SMap hom_postcompose(const SSet& S, const SSet& T, const SSet& Tp,
                     const HomSSet& H, const HomSSet& Hp, const SMap& tau);
/* Evaluation of the hom at a vertex v of S, as a map hom -> T. */
SMap ev_vertex(const HomSSet& H, const SSet& S, const SSet& T, const std::string& v);

uint64_t splitmix64(uint64_t& state);

}  // namespace rigged
