#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sdp/bench.hpp"
#include "sdp/io_json.hpp"
#include "sdp/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitUnreachable = 3;
constexpr int kExitBadFlags = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sdp::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

std::optional<sdp::Scheme> parse_scheme(const std::string& s) {
    if (s == "uniform") return sdp::Scheme::Uniform;
    if (s == "geometric") return sdp::Scheme::Geometric;
    if (s == "hybrid") return std::nullopt;
    throw CLI::ValidationError("--scheme must be uniform|geometric|hybrid");
}

sdp::Algo parse_algo(const std::string& s) {
    if (s == "dijkstra") return sdp::Algo::Dijkstra;
    if (s == "bushwhack") return sdp::Algo::Bushwhack;
    throw CLI::ValidationError("--algo must be dijkstra|bushwhack");
}

bool parse_xy(const std::string& s, double& x, double& y) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return false;
    try {
        size_t used = 0;
        x = std::stod(s.substr(0, comma), &used);
        if (used != comma) return false;
        std::string rest = s.substr(comma + 1);
        y = std::stod(rest, &used);
        return used == rest.size();
    } catch (...) {
        return false;
    }
}

sdp::SurfacePoint parse_source(const sdp::TerrainMesh& mesh, const std::string& spec) {
    double x, y;
    if (parse_xy(spec, x, y)) return sdp::locate(mesh, x, y);
    try {
        int v = std::stoi(spec);
        if (v < 0 || v >= mesh.vertex_count())
            throw CLI::ValidationError("--source vertex index out of range");
        return sdp::SurfacePoint::at_vertex(mesh, v);
    } catch (const CLI::Error&) {
        throw;
    } catch (...) {
        throw CLI::ValidationError("--source must be a vertex index or x,y");
    }
}

int highest_vertex(const sdp::TerrainMesh& mesh) {
    int best = 0;
    for (int v = 1; v < mesh.vertex_count(); ++v)
        if (mesh.height(v) > mesh.height(best)) best = v;
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate shortest descending paths on triangulated terrains"};
    app.require_subcommand(1);

    std::string terrain_path, out_path, source_spec, point_spec;
    std::string scheme_str = "hybrid", algo_str = "bushwhack";
    double eps = 1.0;

    auto add_common = [&](CLI::App* cmd, bool with_algo) {
        cmd->add_option("terrain", terrain_path, "TER terrain file")->required();
        cmd->add_option("--eps", eps, "approximation parameter in (0,1]");
        cmd->add_option("--scheme", scheme_str, "uniform|geometric|hybrid");
        if (with_algo) cmd->add_option("--algo", algo_str, "dijkstra|bushwhack");
        cmd->add_option("--source", source_spec, "source: vertex index or x,y");
        cmd->add_option("--out", out_path, "output file (default stdout)");
    };

    auto* cmd_validate = app.add_subcommand("validate", "check the terrain property");
    cmd_validate->add_option("terrain", terrain_path)->required();

    auto* cmd_params = app.add_subcommand("params", "print geometry parameters");
    cmd_params->add_option("terrain", terrain_path)->required();

    auto* cmd_disc = app.add_subcommand("discretize", "place Steiner points");
    add_common(cmd_disc, false);
    bool dump_points = false;
    cmd_disc->add_flag("--points", dump_points, "dump all Steiner points as CSV");

    auto* cmd_solve = app.add_subcommand("solve", "build the shortest path tree");
    add_common(cmd_solve, true);

    auto* cmd_query = app.add_subcommand("query", "path to a surface point");
    add_common(cmd_query, true);
    cmd_query->add_option("--point", point_spec, "target x,y")->required();

    auto* cmd_export = app.add_subcommand("export", "query and write the path JSON to --out");
    add_common(cmd_export, true);
    cmd_export->add_option("--point", point_spec, "target x,y")->required();

    auto* cmd_gen = app.add_subcommand("gen", "generate a terrain");
    std::string gen_kind;
    int gen_k = 5, gen_n = 30;
    double gen_rout = 2.0, gen_rin = 1.0, gen_height = 1.0, gen_zmax = 0.5;
    uint64_t gen_seed = 1;
    cmd_gen->add_option("kind", gen_kind, "star|random")->required();
    cmd_gen->add_option("--k", gen_k, "star: spike count");
    cmd_gen->add_option("--r-out", gen_rout, "star: outer radius");
    cmd_gen->add_option("--r-in", gen_rin, "star: inner radius");
    cmd_gen->add_option("--height", gen_height, "star: apex height");
    cmd_gen->add_option("--n", gen_n, "random: vertex count");
    cmd_gen->add_option("--seed", gen_seed, "random: RNG seed");
    cmd_gen->add_option("--zmax", gen_zmax, "random: height amplitude");
    cmd_gen->add_option("--out", out_path, "output TER file");

    auto* cmd_bench = app.add_subcommand("bench", "benchmark CSV over terrains");
    std::vector<std::string> bench_files;
    std::vector<double> bench_eps;
    std::vector<std::string> bench_schemes = {"uniform", "geometric"};
    std::vector<std::string> bench_algos = {"bushwhack"};
    cmd_bench->add_option("terrains", bench_files, "TER files")->required();
    cmd_bench->add_option("--eps", bench_eps, "epsilon values");
    cmd_bench->add_option("--schemes", bench_schemes, "schemes to run");
    cmd_bench->add_option("--algos", bench_algos, "algorithms to run");
    cmd_bench->add_option("--out", out_path, "output CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadFlags;
    }

    try {
        if (*cmd_validate) {
            sdp::TerrainMesh mesh;
            try {
                mesh = sdp::load_terrain(read_file(terrain_path));
            } catch (const sdp::NonTerrainMesh& e) {
                std::cout << "invalid: " << e.what() << "\n";
                return kExitParse;
            }
            std::cout << "ok: " << mesh.vertex_count() << " vertices, " << mesh.edge_count()
                      << " edges, " << mesh.face_count() << " faces\n";
            return kExitOk;
        }

        if (*cmd_params) {
            auto mesh = sdp::load_terrain(read_file(terrain_path));
            auto gp = sdp::geometry_params(mesh);
            std::cout.precision(12);
            std::cout << "n " << gp.n << "\nL " << gp.L << "\nh " << gp.h << "\ntheta_rad " << gp.theta
                      << "\ntheta_deg " << gp.theta * 180.0 / M_PI << "\nX " << gp.X << "\nXprime "
                      << gp.Xprime << "\n";
            auto choice = sdp::hybrid_select(gp, eps);
            std::cout << "hybrid_choice " << sdp::scheme_name(choice.scheme) << " (bound_uniform "
                      << choice.bound_uniform << ", bound_geometric " << choice.bound_geometric
                      << ")\n";
            return kExitOk;
        }

        if (*cmd_disc) {
            auto mesh = sdp::load_terrain(read_file(terrain_path));
            if (!source_spec.empty()) mesh = sdp::insert_source(mesh, parse_source(mesh, source_spec));
            auto gp = sdp::geometry_params(mesh);
            auto scheme = parse_scheme(scheme_str);
            sdp::Scheme chosen = scheme ? *scheme : sdp::hybrid_select(gp, eps).scheme;
            auto disc = sdp::discretize(mesh, gp, eps, chosen);
            if (dump_points) {
                write_output(out_path, sdp::steiner_csv(mesh, disc));
            } else {
                std::ostringstream os;
                os << "scheme " << sdp::scheme_name(chosen) << "\n";
                os << "nodes_total " << disc.node_count() << "\n";
                long max_edge = 0;
                for (int e = 0; e < mesh.edge_count(); ++e)
                    max_edge = std::max<long>(max_edge, disc.nodes_on_edge(e));
                os << "max_nodes_per_edge " << max_edge << "\n";
                os << "bound_per_edge " << sdp::per_edge_bound(gp, eps, chosen) << "\n";
                write_output(out_path, os.str());
            }
            return kExitOk;
        }

        if (*cmd_solve || *cmd_query || *cmd_export) {
            auto mesh = sdp::load_terrain(read_file(terrain_path));
            sdp::SurfacePoint source = source_spec.empty()
                                           ? sdp::SurfacePoint::at_vertex(mesh, highest_vertex(mesh))
                                           : parse_source(mesh, source_spec);
            sdp::PipelineConfig config;
            config.epsilon = eps;
            config.scheme = parse_scheme(scheme_str);
            config.algo = parse_algo(algo_str);
            sdp::Pipeline pipeline = sdp::prepare(mesh, source, config);

            if (*cmd_solve) {
                write_output(out_path, sdp::tree_json(pipeline.tree));
                return kExitOk;
            }
            double qx, qy;
            if (!parse_xy(point_spec, qx, qy)) {
                std::cerr << "--point must be x,y\n";
                return kExitBadFlags;
            }
            sdp::SurfacePoint target = sdp::locate(*pipeline.mesh, qx, qy);
            sdp::Path path;
            try {
                path = pipeline.query(target);
            } catch (const sdp::UnreachableTarget& e) {
                std::cerr << "unreachable: " << e.what() << "\n";
                return kExitUnreachable;
            }
            sdp::PathMeta meta;
            meta.source = "vertex:" + std::to_string(pipeline.source_vertex);
            meta.target = sdp::surface_point_on(target);
            meta.epsilon = eps;
            meta.scheme = sdp::scheme_name(pipeline.scheme);
            meta.algo = sdp::algo_name(pipeline.algo);
            write_output(out_path, sdp::export_path_json(path, meta));
            return kExitOk;
        }

        if (*cmd_gen) {
            std::ostringstream os;
            if (gen_kind == "star") {
                auto star = sdp::gen_star_pyramid(gen_k, gen_rout, gen_rin, gen_height);
                os << "# star pyramid k=" << gen_k << " r_out=" << gen_rout << " r_in=" << gen_rin
                   << " H=" << gen_height << "\n";
                os.precision(17);
                os << "# s " << star.s.coords.x << " " << star.s.coords.y << " " << star.s.coords.z
                   << "\n";
                os << "# t " << star.t.coords.x << " " << star.t.coords.y << " " << star.t.coords.z
                   << "\n";
                os << sdp::write_terrain(star.mesh);
            } else if (gen_kind == "random") {
                auto mesh = sdp::gen_random_terrain(gen_n, gen_seed, gen_zmax);
                os << "# random terrain n=" << gen_n << " seed=" << gen_seed << " zmax=" << gen_zmax
                   << "\n";
                os << sdp::write_terrain(mesh);
            } else {
                std::cerr << "gen kind must be star|random\n";
                return kExitBadFlags;
            }
            write_output(out_path, os.str());
            return kExitOk;
        }

        if (*cmd_bench) {
            sdp::BenchOptions options;
            options.eps_list = bench_eps;
            options.schemes.clear();
            for (const auto& s : bench_schemes) {
                auto sc = parse_scheme(s);
                if (!sc) throw CLI::ValidationError("bench --schemes takes uniform|geometric");
                options.schemes.push_back(*sc);
            }
            options.algos.clear();
            for (const auto& a : bench_algos) options.algos.push_back(parse_algo(a));
            std::vector<sdp::BenchCase> corpus;
            for (const auto& file : bench_files) {
                sdp::BenchCase bench;
                bench.name = file;
                bench.mesh = sdp::load_terrain(read_file(file));
                bench.source = sdp::SurfacePoint::at_vertex(bench.mesh, highest_vertex(bench.mesh));
                bench.query_xy = sdp::default_query_points(bench.mesh);
                corpus.push_back(std::move(bench));
            }
            write_output(out_path, sdp::run_bench(corpus, options));
            return kExitOk;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitBadFlags;
    } catch (const sdp::InvalidEpsilon& e) {
        std::cerr << e.what() << "\n";
        return kExitBadFlags;
    } catch (const sdp::UnreachableTarget& e) {
        std::cerr << "unreachable: " << e.what() << "\n";
        return kExitUnreachable;
    } catch (const sdp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const sdp::NonTerrainMesh& e) {
        std::cerr << "invalid terrain: " << e.what() << "\n";
        return kExitParse;
    } catch (const sdp::PointOffTerrain& e) {
        std::cerr << "off terrain: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
