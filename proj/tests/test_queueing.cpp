#include <doctest.h>

#include <random>
#include <vector>

#include "wimax/queueing.hpp"

using namespace wimax;

namespace {

Packet pkt(std::uint32_t bytes, PacketId id = 0) {
  Packet p;
  p.id = id;
  p.size_bytes = bytes;
  return p;
}

// Step-function reference: occupancy is piecewise constant between changes.
struct Step {
  double t;
  double bytes;
};

double step_average(const std::vector<Step>& steps, double horizon) {
  double area = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double end = i + 1 < steps.size() ? steps[i + 1].t : horizon;
    area += steps[i].bytes * (end - steps[i].t);
  }
  return area / horizon;
}

}  // namespace

TEST_CASE("admission at and around capacity") {
  BoundedQueue big(0, 128000);
  CHECK(big.enqueue(pkt(500), 0.0) == EnqueueResult::Accepted);
  CHECK(big.occupied_bytes() == 500);

  BoundedQueue q(0, 1000);
  REQUIRE(q.enqueue(pkt(900), 0.0) == EnqueueResult::Accepted);
  CHECK(q.enqueue(pkt(200), 0.0) == EnqueueResult::Dropped);
  CHECK(q.occupied_bytes() == 900);
  CHECK(q.drops() == 1);

  BoundedQueue edge(0, 1000);
  REQUIRE(edge.enqueue(pkt(500), 0.0) == EnqueueResult::Accepted);
  CHECK(edge.enqueue(pkt(500), 0.0) == EnqueueResult::Accepted);
  CHECK(edge.occupied_bytes() == 1000);
  CHECK(edge.enqueue(pkt(1), 0.0) == EnqueueResult::Dropped);
}

TEST_CASE("boundary rule matches an inclusive brute-force enumeration") {
  // Two packets a then b into capacity c: b is admitted iff a + b <= c.
  for (std::uint32_t c = 1; c <= 12; ++c) {
    for (std::uint32_t a = 1; a <= 12; ++a) {
      for (std::uint32_t b = 1; b <= 12; ++b) {
        BoundedQueue q(0, c);
        const bool a_in = q.enqueue(pkt(a), 0.0) == EnqueueResult::Accepted;
        CHECK(a_in == (a <= c));
        const bool b_in = q.enqueue(pkt(b), 0.0) == EnqueueResult::Accepted;
        CHECK(b_in == ((a_in ? a : 0) + b <= c));
      }
    }
  }
}

TEST_CASE("capacity must be positive") { CHECK_THROWS_AS(BoundedQueue(0, 0), std::invalid_argument); }

TEST_CASE("FIFO dequeue and waiting time") {
  BoundedQueue q(3, 10000);
  CHECK_FALSE(q.dequeue(0.0));
  q.enqueue(pkt(100, 1), 1.0);
  q.enqueue(pkt(100, 2), 1.0);
  auto a = q.dequeue(2.5);
  REQUIRE(a);
  CHECK(a->id == 1);
  CHECK(*a->enqueue_time == 1.0);
  CHECK(*a->dequeue_time == 2.5);
  CHECK(q.total_wait() == doctest::Approx(1.5));
  REQUIRE(q.head());
  CHECK(q.head()->id == 2);
  CHECK(q.size() == 1);
  CHECK(q.served() == 1);
  CHECK(q.index() == 3);
}

TEST_CASE("average_queue_length") {
  BoundedQueue full(0, 1000);
  full.enqueue(pkt(100), 0.0);
  CHECK(average_queue_length(full, 10.0) == doctest::Approx(100.0));

  BoundedQueue late(0, 1000);
  late.enqueue(pkt(200), 5.0);
  CHECK(average_queue_length(late, 10.0) == doctest::Approx(100.0));

  BoundedQueue never(0, 1000);
  CHECK(average_queue_length(never, 10.0) == 0.0);
  CHECK_THROWS_AS(average_queue_length(never, 0.0), std::invalid_argument);
}

TEST_CASE("occupancy integral agrees with a step-function reference") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 400);
  std::uniform_real_distribution<double> gap(0.0, 0.5);
  std::bernoulli_distribution add(0.6);
  for (int trial = 0; trial < 50; ++trial) {
    BoundedQueue q(0, 2000);
    std::vector<Step> steps{{0.0, 0.0}};
    std::uint64_t peak = 0;
    double t = 0.0;
    for (int i = 0; i < 40; ++i) {
      t += gap(rng);
      if (add(rng)) {
        q.enqueue(pkt(static_cast<std::uint32_t>(size(rng))), t);
      } else {
        q.dequeue(t);
      }
      steps.push_back({t, static_cast<double>(q.occupied_bytes())});
      peak = std::max(peak, q.occupied_bytes());
      CHECK(q.peak_bytes() == peak);
      CHECK(q.peak_bytes() <= q.capacity_bytes());
    }
    const double horizon = t + 1.0;
    CHECK(average_queue_length(q, horizon) == doctest::Approx(step_average(steps, horizon)));
  }
}

TEST_CASE("byte-time integral never decreases") {
  BoundedQueue q(0, 5000);
  double last = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.1 * i;
    if (i % 3 == 2) {
      q.dequeue(t);
    } else {
      q.enqueue(pkt(100), t);
    }
    CHECK(q.byte_time_integral() >= last);
    last = q.byte_time_integral();
  }
  q.advance_to(5.0);
  CHECK(q.byte_time_integral() >= last);
  CHECK(q.last_change_time() == 5.0);
}

TEST_CASE("average_time_in_queue") {
  BoundedQueue q(0, 1000);
  CHECK(average_time_in_queue(q) == 0.0);
  q.enqueue(pkt(1), 0.0);
  q.enqueue(pkt(1), 0.0);
  q.enqueue(pkt(1), 0.0);
  q.dequeue(1.0);
  q.dequeue(2.0);
  q.dequeue(3.0);
  CHECK(average_time_in_queue(q) == doctest::Approx(2.0));

  BoundedQueue one(0, 1000);
  one.enqueue(pkt(1), 0.0);
  one.dequeue(1.504912);
  CHECK(average_time_in_queue(one) == doctest::Approx(1.504912));
}

TEST_CASE("a dropped packet leaves the queue untouched") {
  BoundedQueue q(0, 300);
  q.enqueue(pkt(200, 1), 0.0);
  const auto before = q.occupied_bytes();
  CHECK(q.enqueue(pkt(200, 2), 1.0) == EnqueueResult::Dropped);
  CHECK(q.occupied_bytes() == before);
  CHECK(q.size() == 1);
  CHECK(q.accepted() == 1);
}
