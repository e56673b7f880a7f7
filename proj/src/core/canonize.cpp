#include "sprouts/core/canonize.hpp"

#include <algorithm>
#include <atomic>
#include <tuple>
#include <unordered_map>

#include "sprouts/core/reduce.hpp"

namespace sprouts {

namespace {

std::atomic<std::size_t> g_budget{200000};
std::atomic<std::size_t> g_budget_hits{0};

enum Cls : char { kDigit, kLower, kUpper };

struct Local {
  std::vector<Cls> cls;
  std::vector<char> digit;
  // boundaries[r][b] = local vertex indices
  std::vector<std::vector<std::vector<int>>> boundaries;
};

Local localize(const Position& p, const Land& land) {
  Local L;
  std::unordered_map<VertexId, int> index;
  struct Seen { int count = 0; std::size_t r = 0, b = 0; bool spans = false; };
  std::vector<Seen> seen;
  L.boundaries.resize(land.regions.size());
  for (std::size_t r = 0; r < land.regions.size(); ++r) {
    const auto& region = land.regions[r];
    for (std::size_t b = 0; b < region.boundaries.size(); ++b) {
      std::vector<int> seq;
      for (VertexId v : region.boundaries[b]) {
        auto [it, fresh] = index.try_emplace(v, static_cast<int>(seen.size()));
        if (fresh) seen.push_back({0, r, b, false});
        auto& s = seen[static_cast<std::size_t>(it->second)];
        if (s.r != r || s.b != b) s.spans = true;
        ++s.count;
        seq.push_back(it->second);
      }
      L.boundaries[r].push_back(std::move(seq));
    }
  }
  std::vector<int> lives(seen.size());
  for (const auto& [v, i] : index) lives[static_cast<std::size_t>(i)] = p.lives(v);
  L.cls.resize(seen.size());
  L.digit.resize(seen.size());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i].count == 1 && lives[i] >= 1) {
      L.cls[i] = kDigit;
      L.digit[i] = static_cast<char>('0' + (3 - lives[i]));
    } else {
      L.cls[i] = seen[i].spans ? kUpper : kLower;
    }
  }
  return L;
}

std::vector<int> oriented_rotation(const std::vector<int>& seq, int orient, std::size_t rot) {
  const std::size_t n = seq.size();
  std::vector<int> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t idx = (rot + k) % n;
    out[k] = orient ? seq[n - 1 - idx] : seq[idx];
  }
  return out;
}

std::string blind(const Local& L, const std::vector<int>& seq) {
  std::string s;
  s.reserve(seq.size());
  std::vector<std::pair<int, char>> lower;
  for (int v : seq) {
    switch (L.cls[static_cast<std::size_t>(v)]) {
      case kDigit: s += L.digit[static_cast<std::size_t>(v)]; break;
      case kUpper: s += 'A'; break;
      case kLower: {
        auto it = std::find_if(lower.begin(), lower.end(), [&](auto& e) { return e.first == v; });
        if (it == lower.end()) {
          lower.emplace_back(v, static_cast<char>('a' + lower.size()));
          s += lower.back().second;
        } else {
          s += it->second;
        }
      }
    }
  }
  return s;
}

struct BoundaryForm {
  std::string blind;
  std::string colors;
  std::vector<std::size_t> rotations;
};

struct RegionForm {
  std::vector<BoundaryForm> boundaries;
  std::vector<std::size_t> order;
  std::vector<std::size_t> run;  // run id of each slot in `order`
};

bool form_less(const BoundaryForm& a, const BoundaryForm& b) {
  return std::tie(a.blind, a.colors) < std::tie(b.blind, b.colors);
}

bool form_equal(const BoundaryForm& a, const BoundaryForm& b) { return a.blind == b.blind && a.colors == b.colors; }

// A boundary read backwards is one of its own rotations.
bool reversal_symmetric(const std::vector<int>& seq) {
  std::vector<int> rev(seq.rbegin(), seq.rend());
  for (std::size_t rot = 0; rot < seq.size(); ++rot) {
    if (std::equal(seq.begin(), seq.end(), oriented_rotation(rev, 0, rot).begin())) return true;
  }
  return false;
}

class Search {
public:
  Search(const Local& L, std::size_t budget) : L_(L), budget_(budget) {
    const std::size_t R = L.boundaries.size();
    // Refine uppercase letters by the keys of the regions they touch until
    // the number of classes stops growing.
    std::vector<int> color(L.cls.size(), 0);
    std::size_t classes = 1;
    build_forms(color);
    for (std::size_t round = 0; round < L.cls.size(); ++round) {
      std::vector<std::vector<std::string>> sig(L.cls.size());
      for (std::size_t r = 0; r < R; ++r)
        for (const auto& seq : L.boundaries[r])
          for (int v : seq)
            if (L.cls[static_cast<std::size_t>(v)] == kUpper) sig[static_cast<std::size_t>(v)].push_back(region_key_[r]);
      for (std::size_t v = 0; v < sig.size(); ++v) {
        std::sort(sig[v].begin(), sig[v].end());
        sig[v].insert(sig[v].begin(), std::string(1, static_cast<char>(color[v])));
      }
      std::vector<std::vector<std::string>> uniq = sig;
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      if (uniq.size() <= classes) break;
      classes = uniq.size();
      for (std::size_t v = 0; v < sig.size(); ++v)
        color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
      build_forms(color);
    }
    region_order_.resize(R);
    for (std::size_t i = 0; i < R; ++i) region_order_[i] = i;
    std::stable_sort(region_order_.begin(), region_order_.end(),
                     [&](std::size_t a, std::size_t b) { return region_key_[a] < region_key_[b]; });
    region_used_.assign(R, 0);
    boundary_used_.resize(R);
    names_.assign(L.cls.size(), '\0');
  }

  std::string run() {
    place_region(0);
    return best_;
  }

  bool exhausted() const { return exhausted_; }

private:
  struct Option {
    std::size_t region;
    std::size_t form;
    std::size_t boundary;
    std::size_t rotation;
    std::string chunk;
    std::vector<int> fresh;
  };

  void make_chunk(Option& opt, const char* prefix) const {
    const auto& [orient, form] = forms_[opt.region][opt.form];
    auto seq = oriented_rotation(L_.boundaries[opt.region][opt.boundary], orient, opt.rotation);
    opt.chunk = prefix;
    std::vector<std::pair<int, char>> lower;
    char next = next_upper_;
    for (int v : seq) {
      auto i = static_cast<std::size_t>(v);
      switch (L_.cls[i]) {
        case kDigit: opt.chunk += L_.digit[i]; break;
        case kLower: {
          auto it = std::find_if(lower.begin(), lower.end(), [&](auto& e) { return e.first == v; });
          if (it == lower.end()) {
            lower.emplace_back(v, static_cast<char>('a' + lower.size()));
            opt.chunk += lower.back().second;
          } else {
            opt.chunk += it->second;
          }
          break;
        }
        case kUpper: {
          if (names_[i]) {
            opt.chunk += names_[i];
          } else {
            auto it = std::find(opt.fresh.begin(), opt.fresh.end(), v);
            if (it == opt.fresh.end()) {
              opt.fresh.push_back(v);
              opt.chunk += next++;
            } else {
              opt.chunk += static_cast<char>(next_upper_ + (it - opt.fresh.begin()));
            }
          }
        }
      }
    }
  }

  template <class Continue>
  void explore(std::vector<Option>& options, bool region_start, Continue&& next) {
    std::sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
      return std::tie(a.chunk, a.fresh, a.region, a.form) < std::tie(b.chunk, b.fresh, b.region, b.form);
    });
    const Option* prev = nullptr;
    for (auto& opt : options) {
      if (prev && prev->chunk == opt.chunk && prev->fresh == opt.fresh &&
          (!region_start || (prev->region == opt.region && prev->form == opt.form)))
        continue;
      prev = &opt;
      int saved_cmp = cmp_;
      if (have_best_ && cmp_ == 0) {
        int c = best_.compare(text_.size(), opt.chunk.size(), opt.chunk);
        if (c < 0) break;
        if (c > 0) cmp_ = -1;
      }
      if (++nodes_ > budget_) exhausted_ = true;
      const std::size_t len = text_.size();
      const char saved_upper = next_upper_;
      text_ += opt.chunk;
      for (int v : opt.fresh) names_[static_cast<std::size_t>(v)] = next_upper_++;
      next(opt);
      for (int v : opt.fresh) names_[static_cast<std::size_t>(v)] = '\0';
      next_upper_ = saved_upper;
      text_.resize(len);
      cmp_ = saved_cmp;
      if (exhausted_ && have_best_) return;
    }
  }

  void place_region(std::size_t slot) {
    if (slot == region_order_.size()) {
      if (!have_best_ || cmp_ < 0) {
        best_ = text_;
        have_best_ = true;
      }
      return;
    }
    const std::string& key = region_key_[region_order_[slot]];
    std::vector<Option> options;
    for (std::size_t r = 0; r < region_order_.size(); ++r) {
      if (region_used_[r] || region_key_[r] != key) continue;
      for (std::size_t f = 0; f < forms_[r].size(); ++f) {
        const auto& form = forms_[r][f].second;
        for (std::size_t k = 0; k < form.order.size() && form.run[k] == 0; ++k) {
          std::size_t b = form.order[k];
          for (std::size_t rot : form.boundaries[b].rotations) {
            Option opt{r, f, b, rot, {}, {}};
            make_chunk(opt, slot ? "|" : "");
            options.push_back(std::move(opt));
          }
        }
      }
    }
    explore(options, true, [&](const Option& opt) {
      region_used_[opt.region] = 1;
      auto& used = boundary_used_[opt.region];
      used.assign(L_.boundaries[opt.region].size(), 0);
      used[opt.boundary] = 1;
      place_boundary(slot, opt.region, opt.form, 1);
      used[opt.boundary] = 0;
      region_used_[opt.region] = 0;
    });
  }

  void place_boundary(std::size_t slot, std::size_t r, std::size_t f, std::size_t k) {
    const auto& form = forms_[r][f].second;
    if (k == form.order.size()) {
      place_region(slot + 1);
      return;
    }
    auto& used = boundary_used_[r];
    std::vector<Option> options;
    for (std::size_t i = form.run[k]; i < form.order.size() && form.run[i] == form.run[k]; ++i) {
      std::size_t b = form.order[i];
      if (used[b]) continue;
      for (std::size_t rot : form.boundaries[b].rotations) {
        Option opt{r, f, b, rot, {}, {}};
        make_chunk(opt, ".");
        options.push_back(std::move(opt));
      }
    }
    explore(options, false, [&](const Option& opt) {
      used[opt.boundary] = 1;
      place_boundary(slot, r, f, k + 1);
      used[opt.boundary] = 0;
    });
  }

  void build_forms(const std::vector<int>& color) {
    const std::size_t R = L_.boundaries.size();
    forms_.assign(R, {});
    region_key_.assign(R, {});
    for (std::size_t r = 0; r < R; ++r) {
      const auto& seqs = L_.boundaries[r];
      bool symmetric = std::all_of(seqs.begin(), seqs.end(), reversal_symmetric);
      std::string best_key;
      for (int o = 0; o < (symmetric ? 1 : 2); ++o) {
        RegionForm f;
        for (const auto& seq : seqs) {
          BoundaryForm bf;
          for (std::size_t rot = 0; rot < seq.size(); ++rot) {
            auto rotated = oriented_rotation(seq, o, rot);
            BoundaryForm cand{blind(L_, rotated), {}, {}};
            for (int v : rotated)
              cand.colors += L_.cls[static_cast<std::size_t>(v)] == kUpper
                                 ? static_cast<char>(2 + color[static_cast<std::size_t>(v)])
                                 : '\x01';
            if (bf.rotations.empty() || form_less(cand, bf)) {
              bf.blind = std::move(cand.blind);
              bf.colors = std::move(cand.colors);
              bf.rotations.assign(1, rot);
            } else if (form_equal(cand, bf)) {
              bf.rotations.push_back(rot);
            }
          }
          f.boundaries.push_back(std::move(bf));
        }
        f.order.resize(f.boundaries.size());
        for (std::size_t i = 0; i < f.order.size(); ++i) f.order[i] = i;
        std::stable_sort(f.order.begin(), f.order.end(), [&](std::size_t a, std::size_t b) {
          return form_less(f.boundaries[a], f.boundaries[b]);
        });
        std::string blinds, colors;
        f.run.resize(f.order.size());
        for (std::size_t i = 0; i < f.order.size(); ++i) {
          const auto& b = f.boundaries[f.order[i]];
          if (i) {
            blinds += '.';
            colors += '.';
          }
          blinds += b.blind;
          colors += b.colors;
          f.run[i] = (i && form_equal(b, f.boundaries[f.order[i - 1]])) ? f.run[i - 1] : i;
        }
        std::string key = blinds + '\x01' + colors;
        if (o == 0 || key < best_key) {
          best_key = key;
          forms_[r].clear();
        }
        if (key == best_key) forms_[r].emplace_back(o, std::move(f));
      }
      region_key_[r] = best_key;
    }
  }

  const Local& L_;
  std::size_t budget_;
  std::vector<std::vector<std::pair<int, RegionForm>>> forms_;
  std::vector<std::string> region_key_;
  std::vector<std::size_t> region_order_;
  std::vector<char> region_used_;
  std::vector<std::vector<char>> boundary_used_;
  std::vector<char> names_;
  char next_upper_ = 'A';
  std::string text_;
  std::string best_;
  bool have_best_ = false;
  int cmp_ = 0;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

std::unordered_map<std::string, std::string>& cache() {
  thread_local std::unordered_map<std::string, std::string> c;
  if (c.size() > (1u << 20)) c.clear();
  return c;
}

}

void set_canonize_node_budget(std::size_t nodes) { g_budget = nodes; }
std::size_t canonize_budget_hits() { return g_budget_hits; }

std::string canonical_land_string(const Position& reduced, const Land& land) {
  std::string key = serialize_land(reduced, land);
  auto& c = cache();
  if (auto it = c.find(key); it != c.end()) return it->second;
  Local L = localize(reduced, land);
  Search search(L, g_budget);
  std::string out = search.run();
  if (search.exhausted()) ++g_budget_hits;
  c.emplace(std::move(key), out);
  return out;
}

std::vector<std::string> pseudocanonical_lands(const Position& reduced) {
  std::vector<std::string> lands;
  lands.reserve(reduced.lands.size());
  for (const auto& land : reduced.lands) lands.push_back(canonical_land_string(reduced, land));
  std::sort(lands.begin(), lands.end());
  return lands;
}

std::string join_lands(const std::vector<std::string>& lands) {
  std::string out;
  for (std::size_t i = 0; i < lands.size(); ++i) {
    if (i) out += '+';
    out += lands[i];
  }
  return out;
}

std::string pseudocanonical_string(const Position& reduced) { return join_lands(pseudocanonical_lands(reduced)); }

Position pseudocanonize(const Position& reduced) { return parse_position(pseudocanonical_string(reduced)); }

std::string canonical_string(const Position& p) { return pseudocanonical_string(reduce(p)); }

std::string canonical_string(std::string_view text) { return canonical_string(parse_position(text)); }

}
