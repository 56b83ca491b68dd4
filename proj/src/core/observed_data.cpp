#include "rdsize/observed_data.hpp"

#include <algorithm>
#include <string>

#include "rdsize/error.hpp"

namespace rdsize {
namespace {

[[noreturn]] void fail(const std::string& what) { throw DataError(what); }

}  // namespace

ObservedData::ObservedData(std::vector<Subject> subjects) : subjects_(std::move(subjects)) {
  const int n = size();
  if (n == 0) fail("no subjects");

  degrees_.resize(n);
  recruits_made_.assign(n, 0);
  std::vector<int> last_recruit(n, -1);
  for (int j = 0; j < n; ++j) {
    const Subject& s = subjects_[j];
    if (!(s.time >= 0.0)) fail("subject " + s.id + ": recruitment time must be >= 0");
    if (j > 0) {
      const Subject& prev = subjects_[j - 1];
      const bool seed_tie = s.recruiter < 0 && prev.recruiter < 0 && s.time == prev.time;
      if (!(s.time > prev.time) && !seed_tie)
        fail("subjects " + prev.id + " and " + s.id + ": recruitment times must be strictly increasing");
    }
    if (s.degree < 0) fail("subject " + s.id + ": negative degree");
    if (s.coupons < 0) fail("subject " + s.id + ": negative coupon count");
    if (s.recruiter >= j) fail("subject " + s.id + ": recruiter must be recruited earlier");
    if (s.recruiter >= 0) {
      ++recruits_made_[s.recruiter];
      last_recruit[s.recruiter] = j;
      recruitment_edges_.emplace_back(s.recruiter, j);
    } else {
      seeds_.push_back(j);
    }
    degrees_[j] = s.degree;
  }

  for (int i = 0; i < n; ++i) {
    const Subject& s = subjects_[i];
    if (recruits_made_[i] > s.coupons)
      fail("subject " + s.id + ": made " + std::to_string(recruits_made_[i]) + " recruitments with " +
           std::to_string(s.coupons) + " coupons");
    const int incident = recruits_made_[i] + (s.recruiter >= 0 ? 1 : 0);
    if (s.degree < incident)
      fail("subject " + s.id + ": degree " + std::to_string(s.degree) + " is below its " +
           std::to_string(incident) + " recruitment edges");
  }
  max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());

  // Coupon rows: ones on [i+1, hold_end). A subject that hands out its last
  // coupon at event j still held it just before j.
  hold_end_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int issued = subjects_[i].coupons;
    if (issued == 0)
      hold_end_[i] = i + 1;
    else if (recruits_made_[i] == issued)
      hold_end_[i] = last_recruit[i] + 1;
    else
      hold_end_[i] = n;
  }

  holder_offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < hold_end_[i]; ++k) ++holder_offsets_[k + 1];
  for (int k = 0; k < n; ++k) holder_offsets_[k + 1] += holder_offsets_[k];
  holders_.resize(holder_offsets_[n]);
  std::vector<int> fill(holder_offsets_.begin(), holder_offsets_.end() - 1);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < hold_end_[i]; ++k) holders_[fill[k]++] = i;

  waits_.resize(n);
  double prev = 0.0;
  for (int j = 0; j < n; ++j) {
    waits_[j] = subjects_[j].time - prev;
    prev = subjects_[j].time;
  }

  nonseed_rank_.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) nonseed_rank_[j + 1] = nonseed_rank_[j] + (is_seed(j) ? 0 : 1);
}

std::span<const int> ObservedData::coupon_holders(int event) const {
  const auto begin = static_cast<std::size_t>(holder_offsets_[event]);
  const auto end = static_cast<std::size_t>(holder_offsets_[event + 1]);
  return std::span<const int>(holders_).subspan(begin, end - begin);
}

}  // namespace rdsize
