#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "rdsize/error.hpp"
#include "rdsize/observed_data.hpp"

namespace rdsize {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(first, last - first + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& text, const char* column, std::size_t line) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw DataError("line " + std::to_string(line) + ": cannot parse " + column + " '" + text + "'");
  return value;
}

}  // namespace

ObservedData ingest_rds_table(std::span<const RdsRecord> rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw DataError("empty RDS table");

  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].id.empty()) throw DataError("row " + std::to_string(r + 1) + ": empty id");
    if (!row_of.emplace(rows[r].id, r).second) throw DataError("duplicate id '" + rows[r].id + "'");
    if (!std::isfinite(rows[r].time)) throw DataError("subject " + rows[r].id + ": non-finite time");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].time < rows[b].time; });

  std::vector<int> index_of(n);
  for (std::size_t k = 0; k < n; ++k) index_of[order[k]] = static_cast<int>(k);

  std::vector<ObservedData::Subject> subjects;
  subjects.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const RdsRecord& row = rows[order[k]];
    ObservedData::Subject s{row.id, -1, row.time, row.degree, row.coupons};
    if (row.recruiter_id && !row.recruiter_id->empty()) {
      const auto it = row_of.find(*row.recruiter_id);
      if (it == row_of.end())
        throw DataError("subject " + row.id + ": unknown recruiter '" + *row.recruiter_id + "'");
      const int r = index_of[it->second];
      if (r >= static_cast<int>(k))
        throw DataError("subject " + row.id + ": recruiter '" + *row.recruiter_id + "' was not recruited earlier");
      s.recruiter = r;
    }
    subjects.push_back(std::move(s));
  }
  return ObservedData(std::move(subjects));
}

std::vector<RdsRecord> read_rds_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_row(line);
      break;
    }
  }
  if (header.empty()) throw DataError("missing CSV header");

  auto column = [&](const char* name, bool required) -> int {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      if (required) throw DataError(std::string("missing CSV column '") + name + "'");
      return -1;
    }
    return static_cast<int>(it - header.begin());
  };
  const int c_id = column("id", true);
  const int c_rec = column("recruiter_id", true);
  const int c_time = column("time", true);
  const int c_deg = column("degree", true);
  const int c_coup = column("coupons", true);

  std::vector<RdsRecord> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_row(line);
    if (fields.size() != header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(fields.size()));
    RdsRecord rec;
    rec.id = fields[c_id];
    if (!fields[c_rec].empty()) rec.recruiter_id = fields[c_rec];
    rec.time = parse_number<double>(fields[c_time], "time", line_no);
    rec.degree = parse_number<int>(fields[c_deg], "degree", line_no);
    rec.coupons = parse_number<int>(fields[c_coup], "coupons", line_no);
    rows.push_back(std::move(rec));
  }
  return rows;
}

void write_rds_csv(std::ostream& out, const ObservedData& obs) {
  out << "id,recruiter_id,time,degree,coupons\n";
  std::ostringstream t;
  for (int i = 0; i < obs.size(); ++i) {
    t.str({});
    t << std::setprecision(17) << obs.time(i);
    out << obs.id(i) << ',' << (obs.is_seed(i) ? std::string() : obs.id(obs.recruiter(i))) << ',' << t.str() << ','
        << obs.degree(i) << ',' << obs.coupons_issued(i) << '\n';
  }
}

}  // namespace rdsize
