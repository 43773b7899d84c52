// Copyright 2026 The Loopsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <istream>
#include <ostream>

#include "loopsim/dataset.hpp"

namespace loopsim {
namespace {

template <typename T>
bool parse_int(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

void write_snapshot(std::ostream& out, const RatingStore& store) {
  std::string line;
  for (UserIndex u = 0; u < store.num_users(); ++u) {
    const std::string user = std::to_string(store.user_id(u));
    for (const RatingEntry& e : store.profile(u)) {
      line = user;
      line += '\t';
      line += std::to_string(store.item_id(e.item));
      line += '\t';
      line += std::to_string(e.rating);
      line += '\t';
      line += e.origin == kInitialOrigin ? std::string("initial")
                                         : std::to_string(e.origin);
      line += '\n';
      out << line;
    }
  }
}

RatingStore read_snapshot(std::istream& in, const RatingStore& like,
                          const std::string& source_name,
                          std::vector<std::string>* header) {
  RatingStore store = RatingStore::empty_like(like);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header != nullptr) {
        header->push_back(line.size() > 2 ? line.substr(2) : std::string());
      }
      continue;
    }
    std::string_view v(line);
    std::string_view fields[4];
    std::size_t nf = 0;
    std::size_t start = 0;
    while (nf < 4) {
      std::size_t tab = v.find('\t', start);
      fields[nf++] = v.substr(start, tab == std::string_view::npos
                                         ? std::string_view::npos
                                         : tab - start);
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    UserId uid = 0;
    ItemId iid = 0;
    int rating = 0;
    int origin = kInitialOrigin;
    if (nf != 4 || !parse_int(fields[0], uid) || !parse_int(fields[1], iid) ||
        !parse_int(fields[2], rating) ||
        (fields[3] != "initial" &&
         (!parse_int(fields[3], origin) || origin < 1))) {
      throw ParseError(source_name, lineno,
                       "expected user<TAB>item<TAB>rating<TAB>origin");
    }
    auto u = store.find_user(uid);
    auto i = store.find_item(iid);
    if (!u || !i) throw ParseError(source_name, lineno, "unknown user or item");
    try {
      store.insert(*u, *i, rating, origin);
    } catch (const Error& e) {
      throw ParseError(source_name, lineno, e.what());
    }
  }
  return store;
}

}  // namespace loopsim
