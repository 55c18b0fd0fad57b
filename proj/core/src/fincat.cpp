#include "wittkit/fincat.hpp"

#include <functional>
#include <numeric>
#include <sstream>

namespace wittkit::qcat {

FinCategory::FinCategory(
    std::vector<std::string> objects,
    std::map<std::pair<int, int>, std::vector<std::string>> homs,
    std::vector<int> identities,
    std::map<std::tuple<int, int, int, int, int>, int> comp)
    : objects_(std::move(objects)), homs_(std::move(homs)),
      identities_(std::move(identities)), comp_(std::move(comp)) {
  int n = num_objects();
  if (static_cast<int>(identities_.size()) != n)
    throw validation_error("FinCategory: identity list size mismatch");
  for (int i = 0; i < n; ++i)
    if (identities_[i] < 0 ||
        identities_[i] >= static_cast<int>(hom(i, i).size()))
      throw validation_error("FinCategory: identity out of range");

  // composition total and in range
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (size_t f = 0; f < hom(i, j).size(); ++f)
          for (size_t g = 0; g < hom(j, k).size(); ++g) {
            auto it = comp_.find({i, j, k, static_cast<int>(f),
                                  static_cast<int>(g)});
            if (it == comp_.end())
              throw validation_error("FinCategory: composition gap");
            if (it->second < 0 ||
                it->second >= static_cast<int>(hom(i, k).size()))
              throw validation_error("FinCategory: composite out of range");
          }

  // unitality
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (size_t f = 0; f < hom(i, j).size(); ++f) {
        if (compose(i, i, j, identity(i), static_cast<int>(f)) !=
            static_cast<int>(f))
          throw validation_error("FinCategory: left unit law fails");
        if (compose(i, j, j, static_cast<int>(f), identity(j)) !=
            static_cast<int>(f))
          throw validation_error("FinCategory: right unit law fails");
      }

  // associativity, exhaustively
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (size_t f = 0; f < hom(i, j).size(); ++f)
            for (size_t g = 0; g < hom(j, k).size(); ++g)
              for (size_t h = 0; h < hom(k, l).size(); ++h) {
                int gf = compose(i, j, k, static_cast<int>(f),
                                 static_cast<int>(g));
                int hg = compose(j, k, l, static_cast<int>(g),
                                 static_cast<int>(h));
                if (compose(i, k, l, gf, static_cast<int>(h)) !=
                    compose(i, j, l, static_cast<int>(f), hg))
                  throw validation_error("FinCategory: associativity fails");
              }
}

const std::vector<std::string> &FinCategory::hom(int i, int j) const {
  auto it = homs_.find({i, j});
  return it == homs_.end() ? empty_ : it->second;
}

int FinCategory::compose(int i, int j, int k, int f, int g) const {
  auto it = comp_.find({i, j, k, f, g});
  if (it == comp_.end())
    throw validation_error("FinCategory::compose: not in table");
  return it->second;
}

std::vector<int> FinCategory::components() const {
  int n = num_objects();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!hom(i, j).empty())
        parent[find(i)] = find(j);
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (label[r] < 0)
      label[r] = next++;
    out[i] = label[r];
  }
  return out;
}

int FinCategory::component_count() const {
  auto c = components();
  int m = 0;
  for (int x : c)
    m = std::max(m, x + 1);
  return m;
}

nlohmann::json FinCategory::to_json() const {
  nlohmann::json objs = nlohmann::json::array();
  for (const auto &o : objects_)
    objs.push_back(o);
  nlohmann::json homsizes = nlohmann::json::array();
  for (int i = 0; i < num_objects(); ++i)
    for (int j = 0; j < num_objects(); ++j)
      if (!hom(i, j).empty())
        homsizes.push_back(nlohmann::json{{"source", i},
                                          {"target", j},
                                          {"size", hom(i, j).size()}});
  return nlohmann::json{{"objects", objs},
                        {"hom_sizes", homsizes},
                        {"components", components()}};
}

std::string FinCategory::to_dot() const {
  std::ostringstream os;
  os << "digraph qcat {\n";
  auto comp = components();
  for (int i = 0; i < num_objects(); ++i)
    os << "  o" << i << " [label=\"" << objects_[i] << "\\ncomponent "
       << comp[i] << "\"];\n";
  for (int i = 0; i < num_objects(); ++i)
    for (int j = 0; j < num_objects(); ++j) {
      if (i == j || hom(i, j).empty())
        continue;
      os << "  o" << i << " -> o" << j << " [label=\"" << hom(i, j).size()
         << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

} // namespace wittkit::qcat
