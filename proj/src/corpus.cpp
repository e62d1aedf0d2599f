#include "dpa/corpus.hpp"

#include <algorithm>
#include <filesystem>

namespace dpa {

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> v;
    v.push_back(Fixture{"kronecker",
                        Quiver(2, {{"a", 0, 1}, {"b", 0, 1}}),
                        {{0, 0}, {0, 2}, {3, -3}}});
    v.push_back(Fixture{"a2tilde",
                        Quiver(3, {{"a0", 0, 1}, {"a1", 1, 2}, {"a2", 2, 0}}),
                        {{0, 0, 0}, {0, 2, 0}, {1, 2, -3}, {1, -1, 0}}});
    v.push_back(Fixture{"d4tilde",
                        Quiver(5, {{"a1", 1, 0}, {"a2", 2, 0}, {"a3", 3, 0}, {"a4", 4, 0}}),
                        {{0, 0, 0, 0, 0},
                         {0, 2, 0, 0, 0},
                         {-3, 1, 2, -1, 4},
                         {0, 1, -1, 2, -2}}});
    return v;
  }();
  return all;
}

const Fixture& fixture_by_name(const std::string& name) {
  for (const Fixture& f : fixtures())
    if (f.name == name) return f;
  throw ParseError("unknown fixture '" + name + "' (kronecker, a2tilde, d4tilde)");
}

std::vector<std::string> write_rep_files(const std::string& dir,
                                         const std::vector<Json>& payloads) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < payloads.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "item_%03zu.json", k);
    names.emplace_back(buf);
    save_json_file((std::filesystem::path(dir) / names.back()).string(), payloads[k]);
  }
  return names;
}

std::vector<std::pair<std::string, AnyRep>> load_rep_dir(const std::string& dir,
                                                         bool validate_relations) {
  std::filesystem::path p(dir);
  if (!std::filesystem::is_directory(p)) throw ParseError("'" + dir + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(p))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ParseError("no .json files in '" + dir + "'");
  std::vector<std::pair<std::string, AnyRep>> out;
  for (const auto& file : files)
    out.emplace_back(file.stem().string(), rep_from_json(load_json_file(file.string()),
                                                         validate_relations));
  return out;
}

}  // namespace dpa
