#include "wimax/classify.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace wimax::classify {

namespace {

constexpr std::array kBe{Precedence(0)};
constexpr std::array kNrtps{Precedence(1), Precedence(2), Precedence(6)};
constexpr std::array kRtps{Precedence(3)};
constexpr std::array kErtps{Precedence(4)};
constexpr std::array kUgs{Precedence(5), Precedence(7)};

}  // namespace

std::span<const Precedence> precedences_of(QosClass qos) {
  switch (qos) {
    case QosClass::BE: return kBe;
    case QosClass::nrtPS: return kNrtps;
    case QosClass::rtPS: return kRtps;
    case QosClass::ertPS: return kErtps;
    case QosClass::UGS: return kUgs;
  }
  throw std::logic_error("unknown QoS class");
}

Precedence assign_precedence(QosClass qos, std::size_t flow_ordinal) {
  auto set = precedences_of(qos);
  return set[flow_ordinal % set.size()];
}

QosClass class_of(Precedence p) {
  for (auto qos : kAllQosClasses) {
    auto set = precedences_of(qos);
    if (std::find(set.begin(), set.end(), p) != set.end()) return qos;
  }
  throw std::logic_error("precedence without a class");
}

std::size_t queue_index(Precedence p, std::size_t num_queues) {
  if (num_queues == 0) throw std::invalid_argument("num_queues must be >= 1");
  const auto v = static_cast<std::size_t>(p.value());
  return std::min(v, num_queues - 1);
}

int lowest_precedence_in_queue(std::size_t queue, std::size_t num_queues) {
  for (int p = 0; p <= 7; ++p) {
    if (queue_index(Precedence(p), num_queues) == queue) return p;
  }
  return static_cast<int>(queue);
}

}  // namespace wimax::classify
