#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "rdsize/error.hpp"
#include "rdsize/io.hpp"

namespace rdsize {

void write_chain_header(std::ostream& out) { out << "iteration,N,E_S,D_u,log_summand\n"; }

void write_chain_row(std::ostream& out, const ChainRecord& r) {
  out << r.iteration << ',' << r.N << ',' << r.edges << ',' << r.du_total << ',' << std::setprecision(17)
      << r.log_summand << '\n';
}

std::vector<ChainRecord> read_chain_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty chain file");
  if (line.rfind("iteration,N", 0) != 0) throw DataError("chain file lacks the iteration,N,... header");
  std::vector<ChainRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    ChainRecord r;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    row >> r.iteration >> c1 >> r.N >> c2 >> r.edges >> c3 >> r.du_total >> c4 >> r.log_summand;
    if (!row || c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
      throw DataError("chain file line " + std::to_string(line_no) + ": malformed row");
    out.push_back(r);
  }
  return out;
}

}  // namespace rdsize
