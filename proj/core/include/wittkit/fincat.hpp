#pragma once

#include "wittkit/ring.hpp"

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

namespace wittkit::qcat {

/// Finite category given by explicit data: object labels, hom-sets as lists
/// of opaque morphism payloads, identities, and a full composition table.
/// Associativity and unitality are checked exhaustively at construction.
class FinCategory {
public:
  FinCategory() = default;
  FinCategory(std::vector<std::string> objects,
              std::map<std::pair<int, int>, std::vector<std::string>> homs,
              std::vector<int> identities,
              std::map<std::tuple<int, int, int, int, int>, int> comp);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  const std::string &object(int i) const { return objects_[i]; }
  const std::vector<std::string> &hom(int i, int j) const;
  int identity(int i) const { return identities_[i]; }
  /// index of (g : j->k) o (f : i->j) inside hom(i, k)
  int compose(int i, int j, int k, int f, int g) const;

  /// connected components under the symmetrized hom-nonempty relation
  std::vector<int> components() const;
  int component_count() const;

  nlohmann::json to_json() const;
  std::string to_dot() const;

private:
  std::vector<std::string> objects_;
  std::map<std::pair<int, int>, std::vector<std::string>> homs_;
  std::vector<int> identities_;
  std::map<std::tuple<int, int, int, int, int>, int> comp_;
  std::vector<std::string> empty_;
};

} // namespace wittkit::qcat
