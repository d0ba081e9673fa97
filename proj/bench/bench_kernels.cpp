/**
 * Copyright (c) 2026 The Strata Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial vs OpenMP window summarization on synthetic sorted points.

#include "strata/kernels/summarize.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>

using namespace strata;

namespace {

template <typename F>
double median_ms(int repeats, F&& f) {
    std::vector<double> samples;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        samples.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

bool same_windows(const std::vector<kernels::WindowAggregate>& a, const std::vector<kernels::WindowAggregate>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto sa = a[i].agg.summary(a[i].start);
        const auto sb = b[i].agg.summary(b[i].start);
        if (sa.start != sb.start || sa.count != sb.count || sa.min != sb.min || sa.max != sb.max) return false;
        if (std::abs(sa.mean - sb.mean) > 1e-9 * std::max({1.0, std::abs(sa.min), std::abs(sa.max)})) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Summarization kernel benchmark"};
    std::size_t points = 10'000'000;
    std::vector<int> resolutions{10, 20, 30};
    int repeats = 5;
    int threads = 0;
    app.add_option("--points", points, "Input size")->capture_default_str();
    app.add_option("--resolution", resolutions, "Window resolutions")->capture_default_str();
    app.add_option("--repeats", repeats, "Runs per kernel; the median is reported")->capture_default_str();
    app.add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)");
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    std::mt19937_64 rng(1);
    std::vector<RawPoint> data(points);
    Timestamp t = 0;
    std::normal_distribution<double> step(0.0, 1.0);
    double v = 0.0;
    for (auto& p : data) {
        t += 1 + static_cast<Timestamp>(rng() % 2000);
        v += step(rng);
        p = {t, v};
    }

    std::cout << "points " << points << ", omp threads " << omp_get_max_threads() << "\n";
    std::cout << "resolution  windows     serial_ms   omp_ms   speedup  equal\n";
    for (int r : resolutions) {
        std::vector<kernels::WindowAggregate> s;
        std::vector<kernels::WindowAggregate> o;
        const double serial_ms = median_ms(repeats, [&] { s = kernels::serial::summarize_windows(data, r); });
        const double omp_ms = median_ms(repeats, [&] { o = kernels::omp::summarize_windows(data, r); });
        std::printf("%10d  %-10zu  %9.2f  %7.2f  %7.2fx  %s\n", r, s.size(), serial_ms, omp_ms, serial_ms / omp_ms,
                    same_windows(s, o) ? "yes" : "NO");
    }
    return 0;
}
