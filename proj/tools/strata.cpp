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

// strata: service and client command-line tool.

#include "strata/client/http_transport.hpp"
#include "strata/harness/workload.hpp"
#include "strata/service/http_server.hpp"
#include "strata/store/database.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <pthread.h>

using namespace strata;

namespace {

struct Endpoint {
    std::string host = "127.0.0.1";
    int port = 8080;
};

void add_endpoint(CLI::App* app, Endpoint& ep) {
    app->add_option("--host", ep.host, "Service host")->capture_default_str();
    app->add_option("--port", ep.port, "Service port")->capture_default_str();
}

StreamId parse_stream(const std::string& text) {
    auto id = StreamId::parse(text);
    if (!id) throw CLI::ValidationError("--uuid", "not a UUID: " + text);
    return *id;
}

int serve(const std::string& bind, const std::string& store_dir, std::size_t cache_mb) {
    const auto colon = bind.rfind(':');
    const std::string host = colon == std::string::npos ? bind : bind.substr(0, colon);
    const int port = colon == std::string::npos ? 8080 : std::stoi(bind.substr(colon + 1));

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    store::DatabaseOptions opts;
    opts.node_cache_bytes = cache_mb << 20;
    auto db = store::Database::open_directory(store_dir, opts);
    service::QueryService svc(*db);
    service::HttpServer server(svc);
    const int bound = server.start(host, port);
    std::cerr << "strata: serving " << store_dir << " on " << host << ":" << bound << "\n";

    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "strata: signal " << sig << ", shutting down\n";
    server.stop();
    return 0;
}

void print_summary(const harness::MetricsSummary& s) {
    auto show = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string("n/a"); };
    std::cout << "lookups   " << s.hits + s.misses << " (hits " << s.hits << ", misses " << s.misses << ")\n"
              << "missRate  " << s.miss_rate << "\n"
              << "penalty   p50 " << show(s.p50) << " ms, p95 " << show(s.p95) << " ms, p99 " << show(s.p99)
              << " ms (" << s.resolved_misses << " resolved)\n"
              << "hit time  max " << s.max_hit_ms << " ms, within 1 ms " << s.hits_within_1ms * 100 << "%\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strata multiresolution timeseries service and tools"};
    app.require_subcommand(1);

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP query service");
    std::string bind = "127.0.0.1:8080";
    std::string store_dir = "strata-data";
    std::size_t cache_mb = 256;
    serve_cmd->add_option("--bind", bind, "host:port to listen on")->capture_default_str();
    serve_cmd->add_option("--store", store_dir, "Store directory")->capture_default_str();
    serve_cmd->add_option("--node-cache-mb", cache_mb, "Decoded node cache size")->capture_default_str();

    Endpoint ep;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a random-walk stream and ingest it");
    add_endpoint(gen_cmd, ep);
    harness::GenerateConfig gen;
    std::string gen_uuid;
    gen_cmd->add_option("--uuid", gen_uuid, "Stream UUID (random if omitted)");
    gen_cmd->add_option("--points", gen.points, "Number of points")->capture_default_str();
    gen_cmd->add_option("--span-ns", gen.span_ns, "Time span in ns")->capture_default_str();
    gen_cmd->add_option("--start-ns", gen.start_ns, "First timestamp in ns")->capture_default_str();
    gen_cmd->add_option("--gaps", gen.gaps, "Number of gaps")->capture_default_str();
    gen_cmd->add_option("--gap-fraction", gen.gap_fraction, "Share of span inside gaps")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--batch", gen.batch, "Points per insert")->capture_default_str();

    auto* csv_cmd = app.add_subcommand("ingest-csv", "Ingest time_ns,value lines from a CSV file");
    add_endpoint(csv_cmd, ep);
    std::string csv_path;
    std::string csv_uuid;
    std::size_t csv_batch = 100'000;
    csv_cmd->add_option("file", csv_path, "CSV file")->required();
    csv_cmd->add_option("--uuid", csv_uuid, "Stream UUID")->required();
    csv_cmd->add_option("--batch", csv_batch, "Points per insert")->capture_default_str();

    auto* zoom_cmd = app.add_subcommand("zoom-bench", "Run the scripted zoom workload");
    add_endpoint(zoom_cmd, ep);
    harness::WorkloadConfig wl;
    harness::FlakyNetConfig flaky;
    bool use_flaky = false;
    std::string zoom_uuid;
    std::string out_path;
    std::vector<double> think_list;
    zoom_cmd->add_option("--uuid", zoom_uuid, "Stream UUID")->required();
    zoom_cmd->add_option("--think-ms", think_list, "Think time(s) in ms; several values run a sweep")
        ->default_str("300");
    zoom_cmd->add_option("--trials", wl.trials, "Trials")->capture_default_str();
    zoom_cmd->add_option("--iterations", wl.iterations, "Zoom steps per trial")->capture_default_str();
    zoom_cmd->add_option("--zoom-factor", wl.zoom_factor, "Span reduction per step")->capture_default_str();
    zoom_cmd->add_option("--width-px", wl.width_px, "Plot width")->capture_default_str();
    zoom_cmd->add_flag("--prefetch,!--no-prefetch", wl.prefetch, "Enable prefetching");
    zoom_cmd->add_flag("--flaky", use_flaky, "Inject delay and loss");
    zoom_cmd->add_option("--delay-ms", flaky.delay_mean_ms, "Mean one-way delay")->capture_default_str();
    zoom_cmd->add_option("--jitter-ms", flaky.delay_jitter_ms, "Delay standard deviation")->capture_default_str();
    zoom_cmd->add_option("--drop", flaky.drop_rate, "Per-message loss probability")->capture_default_str();
    zoom_cmd->add_option("--seed", wl.seed, "Gesture seed")->capture_default_str();
    zoom_cmd->add_option("--out", out_path, "Write the JSON report here");

    auto* ov_cmd = app.add_subcommand("overview-bench", "Time full-extent overview queries");
    add_endpoint(ov_cmd, ep);
    std::string ov_uuid;
    int width_px = 1000;
    int repeats = 20;
    ov_cmd->add_option("--uuid", ov_uuid, "Stream UUID")->required();
    ov_cmd->add_option("--width-px", width_px, "Plot width")->capture_default_str();
    ov_cmd->add_option("--repeats", repeats, "Queries to run")->capture_default_str();

    auto* list_cmd = app.add_subcommand("streams", "List streams");
    add_endpoint(list_cmd, ep);

    CLI11_PARSE(app, argc, argv);

    try {
        if (serve_cmd->parsed()) return serve(bind, store_dir, cache_mb);

        client::HttpTransport transport(ep.host, ep.port);
        if (gen_cmd->parsed()) {
            const StreamId id = gen_uuid.empty() ? StreamId::random() : parse_stream(gen_uuid);
            const double t = client::steady_now_ms();
            auto r = harness::generate_stream(transport, id, gen);
            std::cout << id.to_string() << " points " << r.points << " version " << r.version << " in "
                      << (client::steady_now_ms() - t) / 1000.0 << " s\n";
        } else if (csv_cmd->parsed()) {
            const StreamId id = parse_stream(csv_uuid);
            std::ifstream in(csv_path);
            if (!in) throw std::runtime_error("cannot open " + csv_path);
            std::vector<RawPoint> batch;
            std::string line;
            std::uint64_t total = 0;
            std::size_t lineno = 0;
            VersionId version = client::sync::insert(transport, {id, {}, true});
            auto flush = [&] {
                if (batch.empty()) return;
                total += batch.size();
                version = client::sync::insert(transport, {id, std::move(batch), true});
                batch.clear();
            };
            while (std::getline(in, line)) {
                ++lineno;
                if (line.empty() || line[0] == '#') continue;
                const auto comma = line.find(',');
                if (comma == std::string::npos) throw std::runtime_error("line " + std::to_string(lineno) + ": expected time_ns,value");
                batch.push_back({std::stoll(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
                if (batch.size() >= csv_batch) flush();
            }
            flush();
            std::cout << id.to_string() << " points " << total << " version " << version << "\n";
        } else if (zoom_cmd->parsed()) {
            const StreamId id = parse_stream(zoom_uuid);
            if (think_list.empty()) think_list.push_back(wl.think_ms);
            flaky.seed = wl.seed;
            harness::FlakyTransport flaky_transport(transport, flaky);
            client::Transport& t = use_flaky ? static_cast<client::Transport&>(flaky_transport) : transport;
            nlohmann::json reports = nlohmann::json::array();
            for (double think : think_list) {
                wl.think_ms = think;
                auto report = harness::run_zoom_workload(t, id, wl);
                report.flaky = use_flaky;
                std::cout << "think " << think << " ms, prefetch " << (wl.prefetch ? "on" : "off")
                          << (use_flaky ? ", flaky" : "") << "\n";
                print_summary(report.summary);
                reports.push_back(harness::report_to_json(report));
            }
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
            }
        } else if (ov_cmd->parsed()) {
            const StreamId id = parse_stream(ov_uuid);
            auto r = harness::overview_benchmark(transport, id, width_px, repeats);
            std::cout << "resolution " << r.resolution << ", " << r.summaries << " summaries\n"
                      << "nearest   " << r.nearest_ms << " ms\n"
                      << "first     " << r.cold_ms << " ms\n"
                      << "warm p50  " << r.warm_median_ms << " ms\n";
        } else if (list_cmd->parsed()) {
            for (const auto& s : client::sync::list_streams(transport)) {
                std::cout << s.id.to_string() << " version " << s.latest << " points " << s.point_count << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "strata: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
