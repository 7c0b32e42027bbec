#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "hmrc/textio.hpp"

using namespace hmrc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "hmrc_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

const std::string kExampleConfig = "family=hl\nk=5\nr1=3\nr2=2\nh1=1\nh2=1\ndelta=2\n";

const std::string& example_bundle() {
  static const std::string dir = [] {
    write_file(path("example.cfg"), kExampleConfig);
    const Result r = run({"construct", "--config", path("example.cfg"), "--out", path("example"), "--h1-one"});
    REQUIRE(r.code == cli::kOk);
    return path("example");
  }();
  return dir;
}

}  // namespace

TEST_CASE("construct prints a summary and writes a bundle") {
  const std::string dir = example_bundle();
  CHECK(fs::exists(fs::path(dir) / "H.mat"));
  const Result r = run({"inspect", "--instance", dir});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("family=hl construction=single-global") != std::string::npos);
  CHECK(r.out.find("t1=2 t2=2 n1=8 n2=4 n=16") != std::string::npos);
  CHECK(r.out.find("q=5 ") != std::string::npos);
  CHECK(r.out.find("H=11x16") != std::string::npos);
  CHECK(r.out.find("admissible_sets=2304") != std::string::npos);
}

TEST_CASE("verify output is identical across worker counts") {
  const std::string dir = example_bundle();
  const Result one = run({"verify", "--instance", dir, "--mask-millis"});
  CHECK(one.code == cli::kOk);
  CHECK(one.out == "verdict=pass checks=13824 millis=0\n");
  for (const char* w : {"2", "4", "7"}) {
    CHECK(run({"verify", "--instance", dir, "--workers", w, "--mask-millis"}).out == one.out);
  }
}

TEST_CASE("verify reports a failing bundle with exit code 1") {
  const std::string dir = example_bundle();
  const std::string broken = path("broken");
  fs::remove_all(broken);
  fs::copy(dir, broken);
  CodeInstance inst = load_instance(broken);
  const Element z = inst.tower->zero(Level::Top);
  for (std::size_t c = 0; c < 8; ++c) inst.H.set(10, c, z);
  std::ostringstream m;
  write_matrix(m, inst.H);
  write_file(fs::path(broken) / "H.mat", m.str());
  const Result r = run({"verify", "--instance", broken});
  CHECK(r.code == cli::kFail);
  CHECK(r.out.rfind("verdict=fail E=", 0) == 0);
  CHECK(run({"verify", "--instance", broken, "--workers", "3"}).out == r.out);
}

TEST_CASE("distance prints the closed forms") {
  const Result r = run({"distance", "--instance", example_bundle()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("distance=7\n") != std::string::npos);
  CHECK(r.out.find("hier_bound=7\n") != std::string::npos);
  CHECK(r.out.find("local_mrc=4\n") != std::string::npos);
  const Result capped = run({"distance", "--instance", example_bundle(), "--cap", "3"});
  CHECK(capped.out.find("distance=>3\n") != std::string::npos);
}

TEST_CASE("encode and recover round trip") {
  const std::string dir = example_bundle();
  const CodeInstance inst = load_instance(dir);
  std::string data;
  for (std::uint64_t rank : {0ull, 1ull, 4242ull, 390624ull, 77ull}) data += format_element(inst.tower->from_rank(Level::Top, rank)) + "\n";
  write_file(path("data.txt"), data);
  const Result enc = run({"encode", "--instance", dir, "--data", path("data.txt")});
  REQUIRE(enc.code == cli::kOk);
  std::istringstream lines(enc.out);
  std::vector<std::string> word;
  for (std::string l; std::getline(lines, l);) word.push_back(l);
  REQUIRE(word.size() == 16);
  std::string received;
  for (std::size_t i = 0; i < word.size(); ++i) received += (i % 4 == 1 || i == 2 ? "?" : word[i]) + "\n";
  write_file(path("received.txt"), received);
  const Result rec = run({"recover", "--instance", dir, "--received", path("received.txt")});
  CHECK(rec.code == cli::kOk);
  CHECK(rec.out == enc.out);

  std::string hopeless;
  for (std::size_t i = 0; i < word.size(); ++i) hopeless += (i < 12 ? "?" : word[i]) + "\n";
  write_file(path("hopeless.txt"), hopeless);
  CHECK(run({"recover", "--instance", dir, "--received", path("hopeless.txt")}).code == cli::kFail);
}

TEST_CASE("trace verdict") {
  write_file(path("pattern.txt"), "D[1][1]=1,2; D[1][2]=1,2; D[2][1]=3,4; D[2][2]=1,4; G[1]=3; G[2]=2\n");
  const Result r = run({"trace", "--instance", example_bundle(), "--pattern", path("pattern.txt")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("verdict=true") != std::string::npos);
  CHECK(r.out.find("residual_globals =") != std::string::npos);
  write_file(path("bad_pattern.txt"), "D[1][1]=1,2\n");
  CHECK(run({"trace", "--instance", example_bundle(), "--pattern", path("bad_pattern.txt")}).code == cli::kInvalid);
}

TEST_CASE("derive-hdl and construct --family hdl") {
  write_file(path("c5.cfg"), "family=hl\nk=2\nr1=2\nr2=2\nh1=2\nh2=2\ndelta=1\n");
  REQUIRE(run({"construct", "--config", path("c5.cfg"), "--out", path("c5")}).code == cli::kOk);
  const Result d = run({"derive-hdl", "--instance", path("c5"), "--out", path("c5_hdl"), "--workers", "2"});
  CHECK(d.code == cli::kOk);
  CHECK(d.out.find("family=hdl construction=derived") != std::string::npos);
  CHECK(d.out.find("case=aligned") != std::string::npos);
  CHECK(fs::exists(workdir() / "c5_hdl" / "derive.log"));
  CHECK(run({"distance", "--instance", path("c5_hdl")}).out.find("distance=6\n") != std::string::npos);

  write_file(path("hdl.cfg"), "family=hdl\nk=2\nr1=1\nr2=1\nh1=1\nh2=1\ndelta=2\n");
  const Result h = run({"construct", "--config", path("hdl.cfg"), "--out", path("hdl")});
  CHECK(h.code == cli::kOk);
  CHECK(h.out.find("n=9") != std::string::npos);
  CHECK(run({"verify", "--instance", path("hdl")}).code == cli::kOk);

  CHECK(run({"derive-hdl", "--instance", example_bundle(), "--out", path("nope")}).code == cli::kInvalid);
}

TEST_CASE("export matches the bundle matrix") {
  const Result r = run({"export", "--instance", example_bundle()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == read_file(fs::path(example_bundle()) / "H.mat"));
  CHECK(run({"export", "--instance", example_bundle(), "--out", path("H_copy.mat")}).code == cli::kOk);
  CHECK(read_file(path("H_copy.mat")) == r.out);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == cli::kInvalid);
  CHECK(run({"frobnicate"}).code == cli::kInvalid);
  CHECK(run({"verify"}).code == cli::kInvalid);
  CHECK(run({"verify", "--instance", path("does_not_exist")}).code == cli::kIo);
  CHECK(run({"verify", "--instance", example_bundle(), "--workers", "0"}).code == cli::kInvalid);
  write_file(path("bad.cfg"), "family=hl\nk=4\nr1=3\nr2=2\nh1=1\nh2=1\ndelta=2\n");
  CHECK(run({"construct", "--config", path("bad.cfg"), "--out", path("bad")}).code == cli::kInvalid);
  CHECK(run({"construct", "--config", path("example.cfg"), "--out", path("q6"), "--q", "6"}).code == cli::kInvalid);
  CHECK(run({"--help"}).code == cli::kOk);
}
