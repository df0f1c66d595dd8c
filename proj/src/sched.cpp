#include "wimax/sched.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "wimax/classify.hpp"

namespace wimax::sched {

std::string_view to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::SP: return "SP";
    case SchedulerKind::RR: return "RR";
    case SchedulerKind::WRR: return "WRR";
    case SchedulerKind::WFQ: return "WFQ";
    case SchedulerKind::SCF: return "SCF";
    case SchedulerKind::DS: return "DS";
  }
  return "?";
}

std::optional<SchedulerKind> parse_scheduler(std::string_view s) {
  for (auto k : kAllSchedulers) {
    if (to_string(k) == s) return k;
  }
  if (s == "SCFQ") return SchedulerKind::SCF;
  if (s == "WF") return SchedulerKind::WFQ;
  return std::nullopt;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive");
  }
}

WeightVector WeightVector::monotone(std::size_t n) {
  std::vector<double> w(n);
  std::iota(w.begin(), w.end(), 1.0);
  return WeightVector(std::move(w));
}

std::optional<std::size_t> sp_select(QueueSet queues) {
  for (std::size_t i = queues.size(); i-- > 0;) {
    if (!queues[i].empty()) return i;
  }
  return std::nullopt;
}

RrDecision rr_select(QueueSet queues, std::size_t pointer) {
  const std::size_t n = queues.size();
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t i = (pointer + step) % n;
    if (!queues[i].empty()) return {i, i};
  }
  return {std::nullopt, pointer};
}

std::vector<std::uint64_t> wrr_quanta(const WeightVector& w) {
  const auto values = w.values();
  if (values.empty()) return {};
  const double lo = *std::min_element(values.begin(), values.end());
  std::vector<double> ratio(values.size());
  std::transform(values.begin(), values.end(), ratio.begin(), [lo](double v) { return v / lo; });

  std::vector<std::uint64_t> q(values.size());
  auto near_integer = [](double x) {
    return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x));
  };
  bool found = false;
  for (std::uint64_t k = 1; k <= 10000 && !found; ++k) {
    found = std::all_of(ratio.begin(), ratio.end(),
                        [&](double r) { return near_integer(r * static_cast<double>(k)); });
    if (found) {
      std::transform(ratio.begin(), ratio.end(), q.begin(), [k](double r) {
        return static_cast<std::uint64_t>(std::llround(r * static_cast<double>(k)));
      });
    }
  }
  if (!found) {
    // Irrational-looking ratios: per-mille resolution.
    std::transform(ratio.begin(), ratio.end(), q.begin(), [](double r) {
      return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(r * 1000.0)));
    });
  }
  const std::uint64_t g = std::reduce(q.begin(), q.end(), std::uint64_t{0},
                                      [](auto a, auto b) { return std::gcd(a, b); });
  for (auto& x : q) x /= g;
  return q;
}

WrrDecision wrr_select(QueueSet queues, WrrState state, std::span<const std::uint64_t> quanta,
                       const std::vector<bool>& eligible) {
  const std::size_t n = queues.size();
  auto usable = [&](std::size_t i) { return eligible[i] && !queues[i].empty(); };

  bool any = false;
  for (std::size_t i = 0; i < n && !any; ++i) any = usable(i);
  if (!any) return {std::nullopt, state};

  if (state.current_queue < n && state.remaining_credit > 0 && usable(state.current_queue)) {
    --state.remaining_credit;
    return {state.current_queue, state};
  }
  // Advance; an empty or ineligible queue forfeits its credit for this round.
  for (;;) {
    state.current_queue = (state.current_queue + 1) % n;
    state.remaining_credit = quanta[state.current_queue];
    if (usable(state.current_queue) && state.remaining_credit > 0) {
      --state.remaining_credit;
      return {state.current_queue, state};
    }
  }
}

WrrDecision wrr_select(QueueSet queues, WrrState state, std::span<const std::uint64_t> quanta) {
  return wrr_select(queues, state, quanta, std::vector<bool>(queues.size(), true));
}

void FairQueueState::reset_idle(SimTime now) {
  virtual_time = 0.0;
  last_real_time = now;
  std::fill(last_finish_tag.begin(), last_finish_tag.end(), 0.0);
  in_service_finish_tag.reset();
}

double gps_virtual_time(FairQueueState& state, SimTime now, double link_rate,
                        const WeightVector& w) {
  if (now < state.last_real_time) throw std::logic_error("virtual clock moved backwards");
  double dt = now - state.last_real_time;
  state.last_real_time = now;

  while (dt > 0.0) {
    double active_weight = 0.0;
    double next_tag = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.last_finish_tag.size(); ++i) {
      if (state.last_finish_tag[i] > state.virtual_time) {
        active_weight += w[i];
        next_tag = std::min(next_tag, state.last_finish_tag[i]);
      }
    }
    if (active_weight == 0.0) break;  // fluid system empty
    const double needed = (next_tag - state.virtual_time) * active_weight / link_rate;
    if (needed <= dt) {
      state.virtual_time = next_tag;
      dt -= needed;
    } else {
      state.virtual_time += dt * link_rate / active_weight;
      dt = 0.0;
    }
  }
  return state.virtual_time;
}

double wfq_on_arrival(FairQueueState& state, const Packet& p, std::size_t qidx,
                      const WeightVector& w, SimTime now, double link_rate) {
  const double v = gps_virtual_time(state, now, link_rate, w);
  const double start = std::max(state.last_finish_tag[qidx], v);
  const double finish = start + static_cast<double>(packet_bits(p)) / w[qidx];
  state.last_finish_tag[qidx] = finish;
  state.finish_tags[p.id] = finish;
  return finish;
}

double scf_on_arrival(FairQueueState& state, const Packet& p, std::size_t qidx,
                      const WeightVector& w) {
  const double anchor = state.in_service_finish_tag.value_or(0.0);
  const double start = std::max(state.last_finish_tag[qidx], anchor);
  const double finish = start + static_cast<double>(packet_bits(p)) / w[qidx];
  state.last_finish_tag[qidx] = finish;
  state.finish_tags[p.id] = finish;
  return finish;
}

std::optional<std::size_t> wfq_select(QueueSet queues, const FairQueueState& state) {
  std::optional<std::size_t> best;
  double best_tag = 0.0;
  // Descending scan so that `<` keeps the higher index on equal tags.
  for (std::size_t i = queues.size(); i-- > 0;) {
    const Packet* head = queues[i].head();
    if (head == nullptr) continue;
    auto it = state.finish_tags.find(head->id);
    if (it == state.finish_tags.end()) {
      throw std::logic_error("fair queuing: head packet has no finish tag");
    }
    if (!best || it->second < best_tag) {
      best = i;
      best_tag = it->second;
    }
  }
  return best;
}

PhbMap PhbMap::for_queues(std::size_t num_queues) {
  PhbMap m;
  m.expedited.resize(num_queues);
  for (std::size_t q = 0; q < num_queues; ++q) {
    m.expedited[q] = classify::lowest_precedence_in_queue(q, num_queues) >= 5;
  }
  return m;
}

DsDecision ds_select(QueueSet queues, WrrState assured_state,
                     std::span<const std::uint64_t> quanta, const PhbMap& phb) {
  for (std::size_t i = queues.size(); i-- > 0;) {
    if (phb.expedited[i] && !queues[i].empty()) return {i, assured_state};
  }
  std::vector<bool> assured(phb.expedited.size());
  std::transform(phb.expedited.begin(), phb.expedited.end(), assured.begin(),
                 [](bool e) { return !e; });
  auto d = wrr_select(queues, assured_state, quanta, assured);
  return {d.queue, d.state};
}

Scheduler::Scheduler(SchedulerKind kind, WeightVector weights, double link_rate)
    : kind_(kind),
      weights_(std::move(weights)),
      link_rate_(link_rate),
      rr_pointer_(weights_.size() - 1),
      wrr_(WrrState::initial(weights_.size())),
      quanta_(wrr_quanta(weights_)),
      phb_(PhbMap::for_queues(weights_.size())) {
  if (weights_.size() == 0) throw std::invalid_argument("scheduler needs at least one queue");
  if (!(link_rate > 0.0)) throw std::invalid_argument("link rate must be positive");
  if (kind == SchedulerKind::WFQ || kind == SchedulerKind::SCF) fair_.emplace(weights_.size());
}

void Scheduler::on_arrival(const Packet& p, std::size_t qidx, SimTime now) {
  if (kind_ == SchedulerKind::WFQ) {
    wfq_on_arrival(*fair_, p, qidx, weights_, now, link_rate_);
  } else if (kind_ == SchedulerKind::SCF) {
    scf_on_arrival(*fair_, p, qidx, weights_);
  }
}

std::optional<std::size_t> Scheduler::select(QueueSet queues) {
  switch (kind_) {
    case SchedulerKind::SP: return sp_select(queues);
    case SchedulerKind::RR: {
      auto d = rr_select(queues, rr_pointer_);
      rr_pointer_ = d.pointer;
      return d.queue;
    }
    case SchedulerKind::WRR: {
      auto d = wrr_select(queues, wrr_, quanta_);
      wrr_ = d.state;
      return d.queue;
    }
    case SchedulerKind::WFQ:
    case SchedulerKind::SCF: return wfq_select(queues, *fair_);
    case SchedulerKind::DS: {
      auto d = ds_select(queues, wrr_, quanta_, phb_);
      wrr_ = d.assured_state;
      return d.queue;
    }
  }
  return std::nullopt;
}

void Scheduler::on_dequeue(const Packet& p) {
  if (!fair_) return;
  auto it = fair_->finish_tags.find(p.id);
  if (it == fair_->finish_tags.end()) throw std::logic_error("dequeued packet has no finish tag");
  fair_->in_service_finish_tag = it->second;
  fair_->finish_tags.erase(it);
}

void Scheduler::on_idle(SimTime now) {
  if (fair_) fair_->reset_idle(now);
}

}  // namespace wimax::sched
