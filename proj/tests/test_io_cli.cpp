#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "pep2gi/io.hpp"
#include "support/random_gen.hpp"

using namespace pep2gi;

namespace {
const Field f3 = Field::make(3);

namespace fs = std::filesystem;

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("pep2gi_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }

    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = dir / name;
        std::ofstream out(p);
        out << text;
        return p;
    }
};

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const TempDir tmp;
    const fs::path out_path = tmp.dir / "stdout.txt";
    const std::string cmd =
        std::string(PEP2GI_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, ss.str()};
}

std::string example_code_json() {
    const LinearCode c(f3, Matrix::from_rows(f3, {{1, 1, 0, 0}, {0, 1, 1, 0}}));
    return code_to_json(c).dump();
}
}  // namespace

TEST_CASE("JSON round trips", "[io]") {
    std::mt19937_64 rng(61);
    for (const auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 1}, {2, 2}, {5, 2}}) {
        const Field f = Field::make(p, m);
        CHECK(field_from_json(field_to_json(f)) == f);
        for (int t = 0; t < 10; ++t) {
            const std::size_t n = 2 + rng() % 5;
            const std::size_t k = 1 + rng() % n;
            const LinearCode c = testgen::random_code(f, n, k, rng);
            const LinearCode back = code_from_json(code_to_json(c));
            CHECK(back == c);
            CHECK(back.gen() == c.gen());

            const WeightedDigraph g = testgen::random_digraph(f, n, rng);
            CHECK(digraph_from_json(digraph_to_json(g)) == g);

            const Matrix mtx = testgen::random_matrix(f, n, k, rng);
            CHECK(matrix_from_json(f, matrix_to_json(mtx)) == mtx);

            const Permutation pi = testgen::random_permutation(n, rng);
            CHECK(permutation_from_json(permutation_to_json(pi)) == pi);
        }
    }
}

TEST_CASE("parse validation", "[io]") {
    CHECK_THROWS_AS(code_from_json(Json::parse(R"({"n": 3, "gen": [[1,0,0]]})")), Error);
    // declared k must match the generator rank
    const auto bad_k = Json::parse(
        R"({"field": {"p": 3, "m": 1, "modulus": []}, "n": 2, "k": 2, "gen": [[1,1],[2,2]]})");
    CHECK_THROWS_AS(code_from_json(bad_k), Error);
    const auto bad_row = Json::parse(
        R"({"field": {"p": 3, "m": 1, "modulus": []}, "n": 3, "gen": [[1,1]]})");
    CHECK_THROWS_AS(code_from_json(bad_row), Error);
    const auto bad_entry = Json::parse(
        R"({"field": {"p": 3, "m": 1, "modulus": []}, "n": 2, "gen": [[1,7]]})");
    CHECK_THROWS_AS(code_from_json(bad_entry), Error);
}

TEST_CASE("edge list format", "[io]") {
    UnweightedGraph g;
    g.n = 3;
    g.edges = {{0, 1}, {1, 2}};
    CHECK(to_edge_list(g) == "3 2\n0 1\n1 2\n");
}

TEST_CASE("solve command exit codes and output", "[cli]") {
    const TempDir tmp;
    const auto c1 = tmp.write("c1.json", example_code_json());

    const LinearCode c(f3, Matrix::from_rows(f3, {{1, 1, 0, 0}, {0, 1, 1, 0}}));
    const LinearCode cp = apply_permutation(c, Permutation::transposition(4, 0, 1));
    const auto c2 = tmp.write("c2.json", code_to_json(cp).dump());

    const auto eq = run_cli("solve " + c1.string() + " " + c2.string());
    CHECK(eq.exit_code == 0);
    const Json v = Json::parse(eq.output);
    CHECK(v.at("tag") == "Equivalent");
    CHECK(v.at("used_b") == 1);
    CHECK(v.at("reason") == "GraphIso");

    // identical files: identity permutation
    const auto self = run_cli("solve " + c1.string() + " " + c1.string());
    CHECK(self.exit_code == 0);
    CHECK(Json::parse(self.output).at("permutation") == Json::array({0, 1, 2, 3}));

    // inequivalent pair -> exit 1
    const LinearCode lcd(f3, Matrix::from_rows(f3, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
    const auto c3 = tmp.write("c3.json", code_to_json(lcd).dump());
    CHECK(run_cli("solve " + c1.string() + " " + c3.string()).exit_code == 1);

    // hull dimension 2 on both sides -> exit 2 (even for identical inputs,
    // the reduction refuses before looking at anything else)
    const LinearCode so(f3, Matrix::from_rows(f3, {{1, 1, 1, 0}, {1, 2, 0, 1}}));
    const auto c4 = tmp.write("c4.json", code_to_json(so).dump());
    CHECK(run_cli("solve " + c4.string() + " " + c4.string()).exit_code == 2);
    const auto c5 = tmp.write(
        "c5.json", code_to_json(apply_permutation(so, Permutation::transposition(4, 0, 3))).dump());
    CHECK(run_cli("solve " + c4.string() + " " + c5.string()).exit_code == 2);

    // mismatched length -> usage error
    const LinearCode shorter(f3, Matrix::from_rows(f3, {{1, 0, 0}}));
    const auto c6 = tmp.write("c6.json", code_to_json(shorter).dump());
    CHECK(run_cli("solve " + c1.string() + " " + c6.string()).exit_code == 3);

    // unreadable file -> usage error
    CHECK(run_cli("solve " + c1.string() + " /nonexistent.json").exit_code == 3);
}

TEST_CASE("classify, projector and count commands", "[cli]") {
    const TempDir tmp;
    const auto c1 = tmp.write("c1.json", example_code_json());

    const auto cl = run_cli("classify " + c1.string());
    CHECK(cl.exit_code == 0);
    const Json v = Json::parse(cl.output);
    CHECK(v.at("tag") == "HullOneReducible");
    CHECK(v.at("hull_vector") == Json::array({1, 2, 1, 0}));
    CHECK(v.at("witness_b") == 1);

    const auto pr = run_cli("projector " + c1.string() + " --a 1 --b 1");
    CHECK(pr.exit_code == 0);
    const Json pj = Json::parse(pr.output);
    CHECK(pj.at("entries") ==
          Json::array({Json::array({1, 1, 0, 0}), Json::array({0, 0, 0, 0}),
                       Json::array({0, 1, 1, 0}), Json::array({1, 2, 1, 0})}));

    // no projector without a valid structure matrix
    CHECK(run_cli("projector " + c1.string()).exit_code == 3);

    const auto ct = run_cli("count --n 4 --k 2 --q 3");
    CHECK(ct.exit_code == 0);
    const Json cj = Json::parse(ct.output);
    CHECK(cj.at("L") == 90);
    CHECK(cj.at("K") == 24);
    CHECK(cj.at("gi_reducible") == 114);

    // identical invocations produce identical bytes
    CHECK(run_cli("count --n 4 --k 2 --q 3").output == ct.output);
}

TEST_CASE("iso, census and export-graph commands", "[cli]") {
    const TempDir tmp;
    std::mt19937_64 rng(62);
    const WeightedDigraph g = testgen::random_digraph(f3, 4, rng);
    const auto pg = testgen::conjugate(g, testgen::random_permutation(4, rng));
    const auto g1 = tmp.write("g1.json", digraph_to_json(g).dump());
    const auto g2 = tmp.write("g2.json", digraph_to_json(pg).dump());

    const auto iso = run_cli("iso " + g1.string() + " " + g2.string());
    CHECK(iso.exit_code == 0);
    CHECK(Json::parse(iso.output).at("isomorphic") == true);

    WeightedDigraph h(f3, 4);
    h.set(0, 1, 1);
    const auto g3 = tmp.write("g3.json", digraph_to_json(h).dump());
    CHECK(run_cli("iso " + g1.string() + " " + g3.string()).exit_code == 1);

    const auto cs = run_cli("census --n 4 --k 2 --q 3");
    CHECK(cs.exit_code == 0);
    const Json cj = Json::parse(cs.output);
    CHECK(cj.at("total_subspaces") == 130);
    CHECK(cj.at("lcd_count") == 90);
    CHECK(cj.at("gi_reducible_count") == 114);

    const auto cmp = run_cli("census --n 4 --k 2 --q 3 --compare --threads 2");
    CHECK(cmp.exit_code == 0);
    CHECK(Json::parse(cmp.output).at("all_match") == true);

    const auto cmp_eps = run_cli("census --n 2 --k 1 --q 3 --form eps-1 --compare");
    CHECK(cmp_eps.exit_code == 0);

    // census cap: tiny cap makes the run refuse
    CHECK(run_cli("census --n 4 --k 2 --q 3 --cap 10").exit_code == 3);

    const auto c1 = tmp.write("c1.json", example_code_json());
    const auto ex = run_cli("export-graph " + c1.string() + " --a 1 --b 1");
    CHECK(ex.exit_code == 0);
    std::istringstream head(ex.output);
    std::size_t verts = 0, edges = 0;
    head >> verts >> edges;
    CHECK(verts > 0);
    CHECK(edges > 0);

    CHECK(run_cli("self-test").exit_code == 0);
    CHECK(run_cli("definitely-not-a-command").exit_code == 3);
}
