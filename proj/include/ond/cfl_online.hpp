#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ond/run_result.hpp"

namespace ond {

struct VirtualSolution {
  std::vector<PointId> open;        // in opening order, root first
  std::vector<PointId> assignment;  // per client
  double cost = 0.0;
};

// Deterministic primal-dual online facility location. Each client arrives
// with a budget equal to its distance to the open set; a closed facility x
// opens once the budgets reaching it, sum of max(0, b_v - d(v, x)), cover
// f_x, and the reaching parts are consumed.
class OnlineFacilityLocation {
 public:
  OnlineFacilityLocation(const MetricSpace& m, std::vector<Facility> facilities, PointId root)
      : m_(&m), facilities_(std::move(facilities)), is_open_(facilities_.size(), false) {
    if (facilities_.empty()) throw Error(ErrorCode::NoFacilities, "empty facility list");
    for (std::size_t f = 0; f < facilities_.size(); ++f)
      if (facilities_[f].point == root) open_facility(f);
    if (sol_.open.empty()) throw Error(ErrorCode::NoFacilities, "root is not a facility");
  }

  // Serves a client; returns its virtual facility and the facilities opened now.
  std::pair<PointId, std::vector<PointId>> serve(PointId p) {
    clients_.push_back({p, (*m_)(p, sol_.open[nearest_open(p)])});
    std::vector<PointId> opened;
    for (;;) {
      std::optional<std::size_t> best;
      double best_slack = 0.0;
      for (std::size_t f = 0; f < facilities_.size(); ++f) {
        if (is_open_[f]) continue;
        const double pot = potential(facilities_[f].point);
        if (pot > 0.0 && pot >= facilities_[f].cost && (!best || pot - facilities_[f].cost > best_slack)) {
          best = f;
          best_slack = pot - facilities_[f].cost;
        }
      }
      if (!best) break;
      const PointId x = facilities_[*best].point;
      for (auto& c : clients_) c.budget = std::min(c.budget, (*m_)(c.point, x));
      open_facility(*best);
      opened.push_back(x);
    }
    const PointId sigma = facilities_[open_index_[nearest_open(p)]].point;
    sol_.assignment.push_back(sigma);
    sol_.cost += (*m_)(p, sigma);
    return {sigma, opened};
  }

  const VirtualSolution& solution() const noexcept { return sol_; }

 private:
  struct Client {
    PointId point;
    double budget;
  };

  double potential(PointId x) const {
    double s = 0.0;
    for (const auto& c : clients_) s += std::max(0.0, c.budget - (*m_)(c.point, x));
    return s;
  }

  void open_facility(std::size_t f) {
    is_open_[f] = true;
    // Keep the open list in facility-index order for tie breaking.
    auto pos = std::lower_bound(open_index_.begin(), open_index_.end(), f);
    sol_.open.insert(sol_.open.begin() + (pos - open_index_.begin()), facilities_[f].point);
    open_index_.insert(pos, f);
    sol_.cost += facilities_[f].cost;
  }

  std::size_t nearest_open(PointId p) const { return nearest_index(*m_, p, sol_.open); }

  const MetricSpace* m_;
  std::vector<Facility> facilities_;
  std::vector<bool> is_open_;
  std::vector<std::size_t> open_index_;
  std::vector<Client> clients_;
  VirtualSolution sol_;
};

inline VirtualSolution run_ofl(const MetricSpace& m, const std::vector<Facility>& facilities, PointId root,
                               const std::vector<PointId>& clients) {
  OnlineFacilityLocation ofl(m, facilities, root);
  for (PointId p : clients) ofl.serve(p);
  return ofl.solution();
}

// Connected facility location on top of the virtual solution. A client
// close enough to the open set (a <= 4 d(i, sigma-hat)) joins it; otherwise
// it opens its virtual facility and links it to the tree once M class-j rent
// clients lie within 2^(j-2), and rents the link to the open set otherwise.
inline RunResult run_cfl(const MetricSpace& m, const RequestSequence& seq, const StepObserver& observer = {}) {
  require_problem(seq, Problem::CFL);
  if (seq.facilities.empty()) throw Error(ErrorCode::NoFacilities, "empty facility list");
  const PointId root = *seq.root;
  OnlineFacilityLocation ofl(m, seq.facilities, root);
  std::map<PointId, double> opening_cost;
  std::map<PointId, std::size_t> facility_rank;
  for (std::size_t f = 0; f < seq.facilities.size(); ++f) {
    opening_cost.emplace(seq.facilities[f].point, seq.facilities[f].cost);
    facility_rank.emplace(seq.facilities[f].point, f);
  }

  RunResult res;
  res.trace = {seq.problem, seq.root, seq.M, {}};
  res.solution.open(root);
  std::vector<PointId> open{root};  // kept in facility-index order
  std::map<int, std::vector<std::size_t>> renters;

  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const PointId p = seq.requests[i].s;
    auto [sigma, newly] = ofl.serve(p);
    const PointId x = open[nearest_index(m, p, open)];
    TraceRecord rec;
    rec.index = i;
    rec.point = p;
    rec.anchor = x;
    rec.a = m(p, x);
    rec.cls = distance_class(rec.a);
    rec.virtual_facility = sigma;
    rec.virtual_opened = newly;

    PointId target = x;
    if (rec.a <= 4.0 * m(p, sigma)) {
      rec.decision = Decision::Virtual;
    } else {
      const int j = *rec.cls;
      for (std::size_t w : renters[j])
        if (m(p, seq.requests[w].s) < pow2(j - 2)) rec.witnesses.push_back(w);
      if (static_cast<double>(rec.witnesses.size()) >= seq.M) {
        rec.decision = Decision::Buy;
        if (!res.solution.opened().count(sigma)) {
          rec.opened = sigma;
          res.solution.open(sigma);
          res.cost += opening_cost.at(sigma);
          res.solution.buy(sigma, x);
          res.cost += seq.M * m(sigma, x);
          auto pos = std::lower_bound(open.begin(), open.end(), sigma, [&](PointId a, PointId b) {
            return facility_rank.at(a) < facility_rank.at(b);
          });
          open.insert(pos, sigma);
        }
        target = sigma;
      } else {
        rec.decision = Decision::Rent;
        rec.rent_terminal = p;
        rec.share = pow2(j + 1);
        renters[j].push_back(i);
      }
    }
    rec.assigned = target;
    res.solution.assign(i, target);
    res.solution.rent(i, p, target);
    res.cost += m(p, target);
    res.trace.records.push_back(std::move(rec));
    notify(observer, i, res.solution);
  }
  return res;
}

// Structural facts about a connected facility location trace.
inline std::vector<Violation> check_cfl_invariants(const RunTrace& trace, const MetricSpace& m) {
  std::vector<Violation> out;
  std::set<PointId> virtual_open, real_open;
  if (trace.root) virtual_open.insert(*trace.root);
  std::map<int, std::vector<const TraceRecord*>> buyers;
  double tree = 0.0, buy_charge = 0.0, share = 0.0;
  for (const auto& r : trace.records) {
    virtual_open.insert(r.virtual_opened.begin(), r.virtual_opened.end());
    if (r.decision == Decision::Rent) share += r.share;
    if (r.decision != Decision::Buy) continue;
    if (r.cls) buyers[*r.cls].push_back(&r);
    buy_charge += trace.M * r.a;
    if (r.opened) {
      real_open.insert(*r.opened);
      if (!virtual_open.count(*r.opened))
        out.push_back({"cfl_subset", "request " + std::to_string(r.index) + " opened " +
                                         std::to_string(*r.opened) + " outside the virtual solution"});
      if (r.anchor) tree += m(*r.opened, *r.anchor);
    }
    if (!r.virtual_facility || !(m(r.point, *r.virtual_facility) < r.a / 4.0))
      out.push_back({"cfl_buy_gap", "request " + std::to_string(r.index) + " bought without a_i > 4 d(i, sigma)"});
  }
  for (const auto& [j, list] : buyers)
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (m(list[a]->point, list[b]->point) < pow2(j - 1))
          out.push_back({"cfl_separation", "requests " + std::to_string(list[a]->index) + " and " +
                                               std::to_string(list[b]->index) + " closer than 2^" +
                                               std::to_string(j - 1)});
  double twice_a = 0.0;
  for (const auto& [j, list] : buyers)
    for (const auto* r : list) twice_a += 2.0 * r->a;
  auto leq = [](double lhs, double rhs) { return lhs <= rhs + 1e-9 * std::max({1.0, lhs, rhs}); };
  if (!leq(tree, twice_a)) out.push_back({"cfl_tree_length", "c(H) exceeds twice the buy distances"});
  if (!leq(buy_charge, share)) out.push_back({"cfl_buy_charge", "M * buy distances exceed the rent share"});
  return out;
}

}  // namespace ond
