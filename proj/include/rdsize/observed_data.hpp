#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rdsize {

// One row of an RDS table before validation.
struct RdsRecord {
  std::string id;
  std::optional<std::string> recruiter_id;  // empty => seed
  double time = 0.0;
  int degree = 0;
  int coupons = 0;
};

// The observed tuple of an RDS study: recruitment forest, reported degrees,
// recruitment times and the coupon matrix. Subjects are indexed 0..n-1 in
// recruitment order. Immutable after construction.
//
// Because a subject's coupon stock only ever decreases, row i of the coupon
// matrix is a contiguous run of ones over events [i+1, hold_end(i)). Both the
// row intervals and the column lists are kept.
class ObservedData {
 public:
  struct Subject {
    std::string id;
    int recruiter = -1;  // -1 marks a seed
    double time = 0.0;
    int degree = 0;
    int coupons = 0;
  };

  // `subjects` must already be in recruitment order. Throws DataError on any
  // violated invariant.
  explicit ObservedData(std::vector<Subject> subjects);

  int size() const noexcept { return static_cast<int>(subjects_.size()); }
  const std::vector<Subject>& subjects() const noexcept { return subjects_; }
  const std::string& id(int i) const { return subjects_[i].id; }
  int recruiter(int i) const { return subjects_[i].recruiter; }
  bool is_seed(int i) const { return subjects_[i].recruiter < 0; }
  int degree(int i) const { return subjects_[i].degree; }
  double time(int i) const { return subjects_[i].time; }
  int coupons_issued(int i) const { return subjects_[i].coupons; }
  int recruits_made(int i) const { return recruits_made_[i]; }

  std::span<const int> degrees() const noexcept { return degrees_; }
  std::span<const int> seeds() const noexcept { return seeds_; }
  int seed_count() const noexcept { return static_cast<int>(seeds_.size()); }
  int max_degree() const noexcept { return max_degree_; }
  // N_min = n + max_i d_i.
  std::int64_t min_population() const noexcept { return size() + static_cast<std::int64_t>(max_degree_); }

  // (recruiter, recruit) pairs in recruit order.
  std::span<const std::pair<int, int>> recruitment_edges() const noexcept { return recruitment_edges_; }

  // Coupon matrix C[i][event].
  bool holds_coupon(int i, int event) const { return event > i && event < hold_end_[i]; }
  int hold_end(int i) const { return hold_end_[i]; }
  std::span<const int> coupon_holders(int event) const;

  // t_i^*: time subject i used its last coupon, or the end of the study.
  double exhaust_time(int i) const { return time(hold_end_[i] - 1); }
  double end_time() const { return subjects_.back().time; }
  // w_j = t_j - t_{j-1} with t_{-1} = 0.
  std::span<const double> waits() const noexcept { return waits_; }

  // Number of non-seed events strictly before `event`; maps event ranges onto
  // the compacted array of non-seed events.
  int nonseed_rank(int event) const { return nonseed_rank_[event]; }

 private:
  std::vector<Subject> subjects_;
  std::vector<int> degrees_;
  std::vector<int> seeds_;
  std::vector<int> recruits_made_;
  std::vector<int> hold_end_;
  std::vector<int> holder_offsets_;
  std::vector<int> holders_;
  std::vector<double> waits_;
  std::vector<int> nonseed_rank_;
  std::vector<std::pair<int, int>> recruitment_edges_;
  int max_degree_ = 0;
};

// Orders records by time, resolves recruiter ids, builds the coupon matrix.
// Ties are rejected unless every tied subject is a seed (seed-only ties carry
// no recruitment event, and keep their input order).
ObservedData ingest_rds_table(std::span<const RdsRecord> rows);

// CSV with header columns id, recruiter_id, time, degree, coupons (any order).
std::vector<RdsRecord> read_rds_csv(std::istream& in);
void write_rds_csv(std::ostream& out, const ObservedData& obs);

}  // namespace rdsize
