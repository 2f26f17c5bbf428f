#include "wd/frontend/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wd/error.hpp"

namespace wd::frontend {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Relation parse_csv_relation(std::string_view text, const TypedStar& star,
                            const std::string& source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl - start);
    if (!trim(line).empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) {
    throw Error(ErrorKind::kIo, source + ": missing header row");
  }

  // col[j] = CSV column holding wire j of star.
  const auto header = split(lines[0]);
  std::vector<std::size_t> col(star.size(), header.size());
  for (std::size_t h = 0; h < header.size(); ++h) {
    auto j = star.star().index_of(header[h]);
    if (!j) {
      throw Error(ErrorKind::kIo, source + ": column '" + std::string(header[h]) +
                                      "' is not a wire of " + to_string(star));
    }
    if (col[*j] != header.size()) {
      throw Error(ErrorKind::kIo, source + ": column '" + std::string(header[h]) +
                                      "' appears twice");
    }
    col[*j] = h;
  }
  for (std::size_t j = 0; j < star.size(); ++j) {
    if (col[j] == header.size()) {
      throw Error(ErrorKind::kIo, source + ": missing column '" + star.wire(j) + "'");
    }
  }

  std::vector<Tuple> tuples;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r]);
    const std::string where = source + ": row " + std::to_string(r);
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::kIo, where + ": expected " + std::to_string(header.size()) +
                                      " values, found " + std::to_string(cells.size()));
    }
    Tuple t(star.size());
    for (std::size_t j = 0; j < star.size(); ++j) {
      auto idx = star.type(j).index_of_text(cells[col[j]]);
      if (!idx) {
        throw Error(ErrorKind::kDomain, where + ": value '" + std::string(cells[col[j]]) +
                                            "' is not in domain " + star.type(j).name() +
                                            " of column " + star.wire(j));
      }
      t[j] = static_cast<std::uint32_t>(*idx);
    }
    tuples.push_back(std::move(t));
  }
  return Relation(star, std::move(tuples));
}

Relation load_csv_relation(const std::filesystem::path& path, const TypedStar& star) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_relation(buf.str(), star, path.string());
}

std::string format_csv(const Relation& r) {
  std::string out;
  for (std::size_t j = 0; j < r.star().size(); ++j) {
    if (j != 0) out += ",";
    out += r.star().wire(j);
  }
  out += "\n";
  auto rows = r.rows();
  std::sort(rows.begin(), rows.end());
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j != 0) out += ",";
      out += to_string(row[j]);
    }
    out += "\n";
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Relation& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << format_csv(r);
}

}  // namespace wd::frontend
