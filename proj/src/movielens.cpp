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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <string_view>
#include <unordered_map>

#include "loopsim/dataset.hpp"

namespace loopsim {
namespace {

constexpr std::string_view kSep = "::";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(kSep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + kSep.size();
  }
}

template <typename T>
bool parse_int(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Calls fn(line_view, line_number) for every non-blank line.
template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v(line);
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    if (v.empty()) continue;
    fn(v, lineno);
  }
}

struct RawRating {
  UserId user;
  ItemId item;
  int rating;
  std::size_t line;
};

}  // namespace

UserGroup parse_group(std::string_view label) {
  if (label == "M") return UserGroup::kMale;
  if (label == "F") return UserGroup::kFemale;
  return UserGroup::kUnknown;
}

std::string_view group_label(UserGroup g) {
  switch (g) {
    case UserGroup::kMale:
      return "M";
    case UserGroup::kFemale:
      return "F";
    case UserGroup::kUnknown:
      break;
  }
  return "unknown";
}

std::size_t Catalog::count_users(UserGroup g) const {
  return static_cast<std::size_t>(std::count_if(
      users.begin(), users.end(),
      [g](const UserMeta& m) { return m.group == g; }));
}

std::size_t Catalog::count_ratings(const RatingStore& store,
                                   UserGroup g) const {
  std::size_t total = 0;
  for (std::size_t u = 0; u < users.size(); ++u) {
    if (users[u].group == g) total += store.user_count(u);
  }
  return total;
}

MovieLensPaths MovieLensPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "ratings.dat", dir / "users.dat", dir / "movies.dat"};
}

Dataset load_movielens(const MovieLensPaths& paths, RatingBounds bounds) {
  const std::string ratings_name = paths.ratings.string();

  std::vector<RawRating> raw;
  for_each_line(paths.ratings, [&](std::string_view line, std::size_t no) {
    auto f = split_fields(line);
    RawRating r{};
    if (f.size() != 4 || !parse_int(f[0], r.user) ||
        !parse_int(f[1], r.item) || !parse_int(f[2], r.rating)) {
      throw ParseError(ratings_name, no,
                       "expected UserID::MovieID::Rating::Timestamp");
    }
    // Timestamp must be numeric but is otherwise unused.
    std::int64_t ts = 0;
    if (!parse_int(f[3], ts)) {
      throw ParseError(ratings_name, no, "timestamp is not an integer");
    }
    if (!bounds.contains(r.rating)) {
      throw RatingRangeError(ratings_name + ":" + std::to_string(no) +
                             ": rating " + std::to_string(r.rating) +
                             " outside [" + std::to_string(bounds.min) + ", " +
                             std::to_string(bounds.max) + "]");
    }
    r.line = no;
    raw.push_back(r);
  });

  std::vector<UserId> user_ids;
  std::vector<ItemId> item_ids;
  user_ids.reserve(raw.size());
  item_ids.reserve(raw.size());
  for (const auto& r : raw) {
    user_ids.push_back(r.user);
    item_ids.push_back(r.item);
  }
  for (auto* ids : {&user_ids, &item_ids}) {
    std::sort(ids->begin(), ids->end());
    ids->erase(std::unique(ids->begin(), ids->end()), ids->end());
  }

  Dataset ds;
  ds.ratings = RatingStore(user_ids, item_ids, bounds);
  for (const auto& r : raw) {
    const UserIndex u = *ds.ratings.find_user(r.user);
    const ItemIndex i = *ds.ratings.find_item(r.item);
    if (ds.ratings.contains(u, i)) {
      throw DuplicateRatingError(ratings_name + ":" + std::to_string(r.line) +
                                 ": duplicate rating for user " +
                                 std::to_string(r.user) + ", movie " +
                                 std::to_string(r.item));
    }
    ds.ratings.insert(u, i, r.rating);
  }

  std::unordered_map<UserId, UserGroup> groups;
  const std::string users_name = paths.users.string();
  for_each_line(paths.users, [&](std::string_view line, std::size_t no) {
    auto f = split_fields(line);
    UserId id = 0;
    if (f.size() < 2 || !parse_int(f[0], id)) {
      throw ParseError(users_name, no,
                       "expected UserID::Gender::Age::Occupation::Zip");
    }
    groups[id] = parse_group(f[1]);
  });
  ds.catalog.users.reserve(user_ids.size());
  for (UserId id : user_ids) {
    auto it = groups.find(id);
    ds.catalog.users.push_back(
        {id, it == groups.end() ? UserGroup::kUnknown : it->second});
  }

  // Id from the first field, genres from the last.
  std::map<ItemId, std::vector<std::string>> movie_genres;
  const std::string movies_name = paths.movies.string();
  for_each_line(paths.movies, [&](std::string_view line, std::size_t no) {
    auto f = split_fields(line);
    ItemId id = 0;
    if (f.size() < 3 || !parse_int(f[0], id)) {
      throw ParseError(movies_name, no, "expected MovieID::Title::Genres");
    }
    std::vector<std::string> genres;
    std::string_view g = f.back();
    std::size_t start = 0;
    while (start <= g.size()) {
      std::size_t bar = g.find('|', start);
      if (bar == std::string_view::npos) bar = g.size();
      if (bar > start) genres.emplace_back(g.substr(start, bar - start));
      start = bar + 1;
    }
    if (genres.empty()) throw ParseError(movies_name, no, "movie has no genre");
    movie_genres[id] = std::move(genres);
  });

  auto& vocab = ds.catalog.genres;
  for (const auto& [id, genres] : movie_genres) {
    vocab.insert(vocab.end(), genres.begin(), genres.end());
  }
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  ds.catalog.items.reserve(item_ids.size());
  for (ItemId id : item_ids) {
    auto it = movie_genres.find(id);
    if (it == movie_genres.end()) {
      throw ParseError(movies_name, 0,
                       "rated movie " + std::to_string(id) + " not listed");
    }
    ItemMeta meta{id, {}};
    for (const auto& g : it->second) {
      auto pos = std::lower_bound(vocab.begin(), vocab.end(), g);
      meta.genres.push_back(static_cast<std::uint16_t>(pos - vocab.begin()));
    }
    std::sort(meta.genres.begin(), meta.genres.end());
    meta.genres.erase(std::unique(meta.genres.begin(), meta.genres.end()),
                      meta.genres.end());
    ds.catalog.items.push_back(std::move(meta));
  }
  return ds;
}

double density(const RatingStore& store) {
  if (store.num_users() == 0 || store.num_items() == 0) {
    throw Error("density undefined for an empty user or item set");
  }
  return static_cast<double>(store.num_ratings()) /
         (static_cast<double>(store.num_users()) *
          static_cast<double>(store.num_items()));
}

}  // namespace loopsim
