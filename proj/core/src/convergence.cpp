// SPDX-License-Identifier: MIT
#include "ratemig/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <thread>
#include <utility>

#include "ratemig/basis.hpp"
#include "ratemig/errors.hpp"
#include "ratemig/mesh.hpp"
#include "ratemig/stepping.hpp"

namespace ratemig {

namespace {

SolutionField run_final_field(const ModelParams& params, int n_elements, int order, int nt,
                              int n_threads) {
  auto mesh = std::make_shared<const Mesh>(build_mesh(params.x_min, params.x_max, n_elements,
                                                      order));
  SolverOptions options;
  options.n_threads = n_threads;
  auto history = run_solver(params, mesh, TimeGrid(params.maturity, nt),
                            default_boundary(params), options);
  return std::move(history.fields.back());
}

void attach_observed_orders(ConvergenceTable& table) {
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto& row = table.rows[i];
    if (row.failed) continue;
    const ConvergenceRow* prev = nullptr;
    for (std::size_t j = i; j-- > 0;) {
      if (!table.rows[j].failed && table.rows[j].order == row.order) {
        prev = &table.rows[j];
        break;
      }
    }
    if (!prev || !(prev->h > row.h)) continue;
    const double dh = std::log(prev->h / row.h);
    auto rate = [&](double coarse, double fine) -> std::optional<double> {
      if (!(coarse > 0.0) || !(fine > 0.0)) return std::nullopt;
      return std::log(coarse / fine) / dh;
    };
    row.order_l2 = rate(prev->errors.l2, row.errors.l2);
    row.order_h1 = rate(prev->errors.h1, row.errors.h1);
    row.order_linf = rate(prev->errors.linf, row.errors.linf);
  }
}

void attach_slopes(ConvergenceTable& table) {
  std::vector<int> orders;
  for (const auto& row : table.rows)
    if (std::find(orders.begin(), orders.end(), row.order) == orders.end())
      orders.push_back(row.order);

  for (int order : orders) {
    GroupSlopes slopes;
    slopes.order = order;
    auto fit = [&](auto pick) -> std::optional<double> {
      // Least squares of log(E) on log(h) across the group's good rows.
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int n = 0;
      for (const auto& row : table.rows) {
        if (row.failed || row.order != order) continue;
        const double e = pick(row.errors);
        if (!(e > 0.0)) continue;
        const double lx = std::log(row.h), ly = std::log(e);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
      }
      if (n < 2) return std::nullopt;
      const double denom = n * sxx - sx * sx;
      if (denom == 0.0) return std::nullopt;
      return (n * sxy - sx * sy) / denom;
    };
    slopes.l2 = fit([](const ErrorReport& e) { return e.l2; });
    slopes.h1 = fit([](const ErrorReport& e) { return e.h1; });
    slopes.linf = fit([](const ErrorReport& e) { return e.linf; });
    table.slopes.push_back(slopes);
  }
}

// Runs row jobs, at most n_threads at a time, results stored by index so the
// table order never depends on scheduling.
template <class Job>
void run_rows(int count, int n_threads, Job&& job) {
  n_threads = std::clamp(n_threads, 1, count);
  if (n_threads == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w)
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    });
  for (auto& worker : workers) worker.join();
}

}  // namespace

ConvergenceTable spatial_convergence_study(const ModelParams& params, std::span<const int> orders,
                                           std::span<const int> element_counts, int nt_fixed,
                                           const StudyOptions& options) {
  params.validate();
  if (orders.empty() || element_counts.empty())
    throw InvalidParameterError("study needs at least one order and one element count");
  if (nt_fixed < 1)
    throw InvalidParameterError("study step count must be positive, got " +
                                std::to_string(nt_fixed));
  const int max_order = *std::max_element(orders.begin(), orders.end());
  const int min_order = *std::min_element(orders.begin(), orders.end());
  if (min_order < 1 || max_order > kMaxElementOrder - 1)
    throw InvalidParameterError("spatial study orders must lie in [1, " +
                                std::to_string(kMaxElementOrder - 1) +
                                "] so the reference can use one order higher");
  const int max_ne = *std::max_element(element_counts.begin(), element_counts.end());

  const SolutionField reference =
      run_final_field(params, 2 * max_ne, max_order + 1, 4 * nt_fixed, options.n_threads);
  const ReferenceFunction ref = field_reference(reference);

  ConvergenceTable table;
  table.resolution_label = "n_elements";
  table.rows.resize(orders.size() * element_counts.size());
  const int per_order = static_cast<int>(element_counts.size());
  run_rows(static_cast<int>(table.rows.size()), options.n_threads, [&](int i) {
    const int order = orders[i / per_order];
    const int ne = element_counts[i % per_order];
    ConvergenceRow row;
    row.resolution = ne;
    row.order = order;
    row.h = (params.x_max - params.x_min) / ne;
    const auto start = std::chrono::steady_clock::now();
    try {
      const SolutionField field = run_final_field(params, ne, order, nt_fixed, 1);
      row.h = field.mesh().max_width();
      row.errors = error_norms(field, ref, gauss_rule(std::min(10, order + 3)));
    } catch (const Error& err) {
      row.failed = true;
      row.failure_reason = err.what();
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                     start).count();
    table.rows[i] = std::move(row);
  });

  attach_observed_orders(table);
  attach_slopes(table);
  return table;
}

ConvergenceTable temporal_convergence_study(const ModelParams& params,
                                            std::span<const int> nt_list, int ne_fixed,
                                            int order_fixed, const StudyOptions& options) {
  params.validate();
  if (nt_list.empty()) throw InvalidParameterError("study needs at least one step count");
  if (ne_fixed < 1 || order_fixed < 1 || order_fixed > kMaxElementOrder)
    throw InvalidParameterError("temporal study mesh parameters out of range");
  for (int nt : nt_list)
    if (nt < 1) throw InvalidParameterError("step counts must be positive");
  if (!(params.maturity > 0.0))
    throw InvalidParameterError("temporal study needs a positive maturity");

  const int nt_ref = 8 * *std::max_element(nt_list.begin(), nt_list.end());
  const SolutionField reference =
      run_final_field(params, ne_fixed, order_fixed, nt_ref, options.n_threads);
  const ReferenceFunction ref = field_reference(reference);

  ConvergenceTable table;
  table.resolution_label = "n_steps";
  table.rows.resize(nt_list.size());
  run_rows(static_cast<int>(nt_list.size()), options.n_threads, [&](int i) {
    const int nt = nt_list[i];
    ConvergenceRow row;
    row.resolution = nt;
    row.order = order_fixed;
    row.h = params.maturity / nt;  // the refined length is the step here
    const auto start = std::chrono::steady_clock::now();
    try {
      const SolutionField field = run_final_field(params, ne_fixed, order_fixed, nt, 1);
      row.errors = error_norms(field, ref, gauss_rule(std::min(10, order_fixed + 3)));
    } catch (const Error& err) {
      row.failed = true;
      row.failure_reason = err.what();
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                     start).count();
    table.rows[i] = std::move(row);
  });

  attach_observed_orders(table);
  attach_slopes(table);
  return table;
}

}  // namespace ratemig
