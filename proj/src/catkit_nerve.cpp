#include <algorithm>

#include "rigged/catkit.hpp"

namespace rigged {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string join_chain(const std::vector<std::string>& entries) {
  std::string out;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ";";
    out += entries[i];
  }
  return out;
}

/* Normal form of a composable entry list that may contain identities:
   degeneracy word from the identity positions over the identity-free chain. */
SimplexRef chain_ref(const FinCat& C, const std::vector<std::string>& entries) {
  std::vector<int> word;
  std::vector<std::string> rest;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (C.is_id(entries[i]))
      word.insert(word.begin(), (int)i);  /* positions ascending -> word descending */
    else
      rest.push_back(entries[i]);
  }
  /* word entry for an identity at 1-based position p is p-1, measured in the
     original chain; collected descending above. */
  if (rest.empty()) return {word, C.dom_of(entries[0])};
  return {word, join_chain(rest)};
}

}  // namespace

SimplexRef nerve_chain_ref(const FinCat& C, const std::vector<std::string>& entries) {
  if (entries.empty()) fail("nerve_chain_ref: empty entry list");
  return chain_ref(C, entries);
}

std::vector<std::string> nerve_expand_ref(const FinCat& C, const SimplexRef& r, int n) {
  std::vector<std::string> entries;
  std::string at;
  if (r.base.find(';') == std::string::npos && C.has_object(r.base)) {
    at = r.base;
  } else {
    std::string cur;
    for (char c : r.base) {
      if (c == ';') {
        entries.push_back(cur);
        cur.clear();
      } else
        cur.push_back(c);
    }
    entries.push_back(cur);
    at = C.dom_of(entries[0]);
  }
  /* degeneracy word positions, ascending, insert identities left to right */
  std::vector<int> pos(r.deg.rbegin(), r.deg.rend());
  for (int i : pos) {
    if (i < 0 || i > (int)entries.size()) fail("nerve_expand_ref: bad degeneracy word");
    const std::string& o = i == 0 ? (entries.empty() ? at : C.dom_of(entries[0]))
                                  : C.cod_of(entries[i - 1]);
    entries.insert(entries.begin() + i, C.id_of(o));
  }
  if ((int)entries.size() != n) fail("nerve_expand_ref: dimension mismatch");
  return entries;
}

SSet nerve(const FinCat& C, int k) {
  if (k < 0) fail("nerve: negative truncation level");
  for (const auto& m : C.morphisms)
    if (m.find(';') != std::string::npos) fail("nerve: morphism id contains ';'");
  SSet N;
  for (const auto& o : C.objects) N.add_cell(0, o);
  std::map<std::string, std::vector<std::string>> chain_of;
  std::vector<std::vector<std::string>> prev;  /* chains of the previous dimension */
  for (const auto& m : C.morphisms)
    if (!C.is_id(m)) prev.push_back({m});
  for (int n = 1; n <= k && !prev.empty(); ++n) {
    for (const auto& ch : prev) {
      std::string id = join_chain(ch);
      N.add_cell(n, id);
      chain_of[id] = ch;
    }
    std::vector<std::vector<std::string>> next;
    for (const auto& ch : prev)
      for (const auto& m : C.morphisms) {
        if (C.is_id(m) || C.dom_of(m) != C.cod_of(ch.back())) continue;
        std::vector<std::string> ext = ch;
        ext.push_back(m);
        next.push_back(ext);
      }
    prev = next;
  }
  for (const auto& [id, ch] : chain_of) {
    int n = (int)ch.size();
    std::vector<SimplexRef> fs;
    for (int i = 0; i <= n; ++i) {
      if (n == 1) {
        fs.push_back({{}, i == 0 ? C.cod_of(ch[0]) : C.dom_of(ch[0])});
        continue;
      }
      std::vector<std::string> sub;
      if (i == 0)
        sub.assign(ch.begin() + 1, ch.end());
      else if (i == n)
        sub.assign(ch.begin(), ch.end() - 1);
      else {
        sub = ch;
        sub[i - 1] = C.compose(ch[i], ch[i - 1]);
        sub.erase(sub.begin() + i);
      }
      fs.push_back(chain_ref(C, sub));
    }
    N.set_faces(id, fs);
  }
  N.sort_cells();
  return N;
}

SMap nerve_map(const FinCat& C, const FinCat& D, const CFunctor& F, int k) {
  SSet NC = nerve(C, k);
  SMap f;
  for (const auto& o : C.objects) f.assignment[o] = {{}, F.ob.at(o)};
  for (int n = 1; n < (int)NC.cells.size(); ++n)
    for (const auto& id : NC.cells[n]) {
      std::vector<std::string> ch, img;
      std::string cur;
      for (char c : id) {
        if (c == ';') {
          ch.push_back(cur);
          cur.clear();
        } else
          cur.push_back(c);
      }
      ch.push_back(cur);
      for (const auto& m : ch) img.push_back(F.mor.at(m));
      f.assignment[id] = chain_ref(D, img);
    }
  return f;
}

namespace {

using Word = std::vector<std::string>;

/* length-lexicographic order on edge words */
bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Rule {
  Word lhs, rhs;
  bool operator==(const Rule& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

bool apply_at(const Word& w, const Rule& r, size_t pos, Word& out) {
  if (pos + r.lhs.size() > w.size()) return false;
  for (size_t i = 0; i < r.lhs.size(); ++i)
    if (w[pos + i] != r.lhs[i]) return false;
  out.clear();
  out.insert(out.end(), w.begin(), w.begin() + pos);
  out.insert(out.end(), r.rhs.begin(), r.rhs.end());
  out.insert(out.end(), w.begin() + pos + r.lhs.size(), w.end());
  return true;
}

Word reduce_word(Word w, const std::vector<Rule>& rules) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t pos = 0; pos < w.size() && !changed; ++pos)
      for (const auto& r : rules) {
        Word out;
        if (apply_at(w, r, pos, out)) {
          w = std::move(out);
          changed = true;
          break;
        }
      }
  }
  return w;
}

}  // namespace

HtpyCat homotopy_cat(const SSet& S, size_t budget) {
  std::vector<std::string> verts = S.cells.empty() ? std::vector<std::string>{} : S.cells[0];
  std::vector<std::string> edges =
      S.cells.size() > 1 ? S.cells[1] : std::vector<std::string>{};
  std::map<std::string, std::string> src, tgt;
  for (const auto& e : edges) {
    if (e.find(';') != std::string::npos || e.find('@') != std::string::npos)
      fail("homotopy_cat: edge id contains a reserved character");
    src[e] = S.faces.at(e)[1].base;
    tgt[e] = S.faces.at(e)[0].base;
  }
  auto path_of = [&](const SimplexRef& r) -> Word {
    return r.deg.empty() ? Word{r.base} : Word{};
  };
  std::vector<Rule> rules;
  auto add_rule = [&](Word u, Word v) {
    u = reduce_word(std::move(u), rules);
    v = reduce_word(std::move(v), rules);
    if (u == v) return;
    if (word_less(u, v)) std::swap(u, v);
    rules.push_back({std::move(u), std::move(v)});
    if (rules.size() > 512) fail("homotopy_cat: rewriting system exceeds the rule budget");
  };
  if (S.cells.size() > 2)
    for (const auto& t : S.cells[2]) {
      const auto& fs = S.faces.at(t);
      Word lhs = path_of(fs[2]);
      Word d0 = path_of(fs[0]);
      lhs.insert(lhs.end(), d0.begin(), d0.end());
      add_rule(lhs, path_of(fs[1]));
    }
  /* Knuth-Bendix completion; the order above is length-reducing, so every
     oriented rule terminates and completion only has to resolve overlaps. */
  for (int pass = 0;; ++pass) {
    if (pass > 64) fail("homotopy_cat: completion exceeds the pass budget");
    size_t before = rules.size();
    std::vector<Rule> snap = rules;
    for (const auto& r1 : snap)
      for (const auto& r2 : snap) {
        size_t n1 = r1.lhs.size(), n2 = r2.lhs.size();
        /* proper suffix of r1.lhs equals proper prefix of r2.lhs */
        for (size_t k = 1; k < n1 && k < n2; ++k) {
          bool match = true;
          for (size_t i = 0; i < k; ++i)
            if (r1.lhs[n1 - k + i] != r2.lhs[i]) {
              match = false;
              break;
            }
          if (!match) continue;
          Word b1 = r1.rhs;
          b1.insert(b1.end(), r2.lhs.begin() + k, r2.lhs.end());
          Word b2(r1.lhs.begin(), r1.lhs.end() - k);
          b2.insert(b2.end(), r2.rhs.begin(), r2.rhs.end());
          add_rule(b1, b2);
        }
        /* r2.lhs contained in r1.lhs */
        if (n2 <= n1)
          for (size_t pos = 0; pos + n2 <= n1; ++pos) {
            if (r1 == r2 && pos == 0 && n1 == n2) continue;
            bool match = true;
            for (size_t i = 0; i < n2; ++i)
              if (r1.lhs[pos + i] != r2.lhs[i]) {
                match = false;
                break;
              }
            if (!match) continue;
            Word b2(r1.lhs.begin(), r1.lhs.begin() + pos);
            b2.insert(b2.end(), r2.rhs.begin(), r2.rhs.end());
            b2.insert(b2.end(), r1.lhs.begin() + pos + n2, r1.lhs.end());
            add_rule(r1.rhs, b2);
          }
      }
    if (rules.size() == before) break;
  }
  /* enumerate irreducible words per source vertex */
  std::map<std::string, std::vector<std::string>> out_edges;
  for (const auto& e : edges) out_edges[src[e]].push_back(e);
  HtpyCat H;
  size_t count = 0;
  auto word_id = [&](const Word& w, const std::string& at) {
    return w.empty() ? "@" + at : join_chain(w);
  };
  std::map<std::string, std::string> id_by_key;  /* word id -> morphism id (same) */
  for (const auto& a : verts) {
    H.cat.add_object(a);
    Word w;
    std::vector<std::pair<Word, std::string>> stack{{w, a}};
    while (!stack.empty()) {
      auto [cur, at] = stack.back();
      stack.pop_back();
      std::string id = word_id(cur, a);
      H.cat.add_morphism(id, a, at);
      H.words[id] = {a, cur};
      id_by_key[id] = id;
      if (++count > budget) fail("homotopy_cat: morphism budget exceeded");
      if (cur.size() >= 31)
        fail("homotopy_cat: normal forms keep growing; the category is likely infinite");
      for (const auto& e : out_edges[at]) {
        Word ext = cur;
        ext.push_back(e);
        bool reducible = false;
        for (const auto& r : rules) {
          if (r.lhs.size() > ext.size()) continue;
          bool match = true;
          for (size_t i = 0; i < r.lhs.size(); ++i)
            if (ext[ext.size() - r.lhs.size() + i] != r.lhs[i]) {
              match = false;
              break;
            }
          if (match) {
            reducible = true;
            break;
          }
        }
        if (!reducible) stack.push_back({ext, tgt[e]});
      }
    }
    H.cat.identity[a] = "@" + a;
  }
  auto lookup = [&](const Word& w, const std::string& at) -> const std::string& {
    std::string key = word_id(w, at);
    auto it = id_by_key.find(key);
    if (it == id_by_key.end()) fail("homotopy_cat: missing normal form '" + key + "'");
    return it->second;
  };
  for (const auto& m1 : H.cat.morphisms)
    for (const auto& m2 : H.cat.morphisms) {
      if (H.cat.dom.at(m2) != H.cat.cod.at(m1)) continue;
      Word w = H.words.at(m1).second;
      const Word& w2 = H.words.at(m2).second;
      w.insert(w.end(), w2.begin(), w2.end());
      H.cat.comp[{m2, m1}] = lookup(reduce_word(std::move(w), rules), H.words.at(m1).first);
    }
  for (const auto& e : edges) H.edge_mor[e] = lookup(reduce_word({e}, rules), src[e]);
  H.cat.sort_all();
  return H;
}

std::string HtpyCat::path_morphism(const std::vector<std::string>& edges) const {
  if (edges.empty()) throw std::invalid_argument("path_morphism: empty path");
  std::string cur = edge_mor.at(edges[0]);
  for (size_t i = 1; i < edges.size(); ++i) cur = cat.compose(edge_mor.at(edges[i]), cur);
  return cur;
}

CFunctor hfunctor(const SSet& S, const SSet& T, const SMap& f, const HtpyCat& hS,
                  const HtpyCat& hT) {
  (void)S;
  (void)T;
  CFunctor F;
  for (const auto& v : hS.cat.objects) F.ob[v] = f.at(v).base;
  for (const auto& m : hS.cat.morphisms) {
    const auto& [at, word] = hS.words.at(m);
    std::string cur = hT.cat.id_of(F.ob.at(at));
    for (const auto& e : word) {
      const SimplexRef& fe = f.at(e);
      const std::string& g =
          fe.deg.empty() ? hT.edge_mor.at(fe.base) : hT.cat.id_of(fe.base);
      cur = hT.cat.compose(g, cur);
    }
    F.mor[m] = cur;
  }
  return F;
}

std::optional<CFunctor> iso_fincat(const FinCat& A, const FinCat& B) {
  if (A.objects.size() != B.objects.size() || A.morphisms.size() != B.morphisms.size())
    return std::nullopt;
  std::vector<std::string> aobs = A.objects, amors;
  for (const auto& m : A.morphisms)
    if (!A.is_id(m)) amors.push_back(m);
  CFunctor F;
  std::set<std::string> used_ob, used_mor;
  std::function<bool(size_t)> place_mor = [&](size_t i) -> bool {
    if (i == amors.size()) {
      /* composition check */
      for (const auto& f : A.morphisms)
        for (const auto& g : A.morphisms) {
          if (A.cod_of(f) != A.dom_of(g)) continue;
          if (F.mor.at(A.compose(g, f)) != B.compose(F.mor.at(g), F.mor.at(f))) return false;
        }
      return true;
    }
    const std::string& m = amors[i];
    for (const auto& c : B.hom(F.ob.at(A.dom_of(m)), F.ob.at(A.cod_of(m)))) {
      if (B.is_id(c) || used_mor.count(c)) continue;
      F.mor[m] = c;
      used_mor.insert(c);
      if (place_mor(i + 1)) return true;
      used_mor.erase(c);
      F.mor.erase(m);
    }
    return false;
  };
  std::function<bool(size_t)> place_ob = [&](size_t i) -> bool {
    if (i == aobs.size()) {
      for (const auto& o : aobs) F.mor[A.id_of(o)] = B.id_of(F.ob.at(o));
      if (place_mor(0)) return true;
      for (const auto& o : aobs) F.mor.erase(A.id_of(o));
      return false;
    }
    for (const auto& c : B.objects) {
      if (used_ob.count(c)) continue;
      F.ob[aobs[i]] = c;
      used_ob.insert(c);
      if (place_ob(i + 1)) return true;
      used_ob.erase(c);
      F.ob.erase(aobs[i]);
    }
    return false;
  };
  if (!place_ob(0)) return std::nullopt;
  return F;
}

}  // namespace rigged
