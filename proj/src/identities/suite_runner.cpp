#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include "mf/identities.hpp"

namespace mf {

namespace {

using Task = std::function<std::vector<IdentityReport>()>;

template <class F>
Task single(F f) {
  return [f] { return std::vector<IdentityReport>{f()}; };
}

std::vector<Task> build_tasks(const IdentitySuite& suite, const std::string& id, int n_max, int k_max,
                              const LambdaMode& mode) {
  std::vector<Task> tasks;
  auto grid = [&](int n_lo, int k_lo, bool n_at_least_k, auto check) {
    for (int k = k_lo; k <= k_max; ++k) {
      for (int n = std::max(n_lo, n_at_least_k ? k : 0); n <= n_max; ++n) {
        tasks.push_back(single([&suite, check, n, k] { return check(suite, n, k); }));
      }
    }
  };

  if (id == "thm1") {
    grid(0, 0, false, [](const IdentitySuite& s, int n, int k) { return s.verify_thm1(n, k); });
  } else if (id == "cor2") {
    grid(0, 1, false, [](const IdentitySuite& s, int n, int k) { return s.verify_cor2(n, k); });
  } else if (id == "lemma-bn") {
    for (int n = 0; n <= n_max; ++n) tasks.push_back(single([&suite, n] { return suite.verify_lemma_bn(n); }));
  } else if (id == "thm3") {
    for (int n = 1; n <= n_max; ++n) tasks.push_back(single([&suite, n] { return suite.verify_thm3(n); }));
  } else if (id == "thm4") {
    grid(0, 0, true, [mode](const IdentitySuite& s, int n, int k) { return s.verify_thm4(n, k, mode); });
  } else if (id == "thm5") {
    grid(0, 1, false, [](const IdentitySuite& s, int n, int k) { return s.verify_thm5(n, k); });
  } else if (id == "thm6") {
    grid(0, 0, true, [mode](const IdentitySuite& s, int n, int k) { return s.verify_thm6(n, k, mode); });
  } else if (id == "eq41") {
    grid(1, 1, false, [mode](const IdentitySuite& s, int n, int k) { return s.verify_eq41(n, k, mode); });
  } else if (id == "limit") {
    grid(1, 1, true, [](const IdentitySuite& s, int n, int k) { return s.verify_limit_identity(n, k); });
  } else if (id == "thm8") {
    grid(0, 1, false, [](const IdentitySuite& s, int n, int k) { return s.verify_thm8(n, k); });
  } else if (id == "thm9") {
    grid(0, 1, false, [](const IdentitySuite& s, int n, int k) { return s.verify_thm9(n, k); });
  } else if (id == "remark") {
    grid(0, 1, false, [](const IdentitySuite& s, int n, int k) { return s.verify_remark(n, k); });
  } else if (id == "eq52") {
    grid(0, 1, false, [](const IdentitySuite& s, int n, int k) { return s.verify_eq52(n, k); });
  } else if (id == "pfrac") {
    for (int k = 0; k <= k_max; ++k) {
      tasks.push_back(single([&suite, k, n_max] { return suite.verify_partial_fraction(k, n_max); }));
    }
  } else if (id == "recurrences") {
    tasks.push_back([&suite, n_max] { return suite.verify_recurrences(n_max); });
  } else {
    throw std::invalid_argument("unknown identity id: " + id);
  }
  return tasks;
}

}  // namespace

std::vector<CheckTask> IdentitySuite::plan(const SuiteOptions& options) const {
  if (options.n_max < 0 || options.k_max < 0) throw std::invalid_argument("run: n_max, k_max must be >= 0");
  const auto& ids = options.identities.empty() ? identity_ids() : options.identities;
  std::vector<CheckTask> tasks;
  for (const auto& id : ids) {
    for (auto& t : build_tasks(*this, id, options.n_max, options.k_max, options.mode)) {
      tasks.push_back(CheckTask{id, std::move(t)});
    }
  }
  return tasks;
}

std::vector<IdentityReport> IdentitySuite::run(const SuiteOptions& options) const {
  const std::vector<CheckTask> tasks = plan(options);

  // Fill the shared tables once before fanning out.
  tables_->warm(options.n_max + options.k_max + 1);

  std::vector<std::vector<IdentityReport>> results(tasks.size());
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));

  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i].run();
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i].run();
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<IdentityReport> out;
  for (auto& batch : results) {
    out.insert(out.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }
  return out;
}

}  // namespace mf
