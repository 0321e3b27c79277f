/* Copyright 2026 The RECAST Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "recast/api_json.h"
#include "recast/embedding_store.h"
#include "recast/model_io.h"
#include "test_util.h"

extern char** environ;

namespace recast {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct Process {
  pid_t pid = -1;
  std::string stdout_path;
  std::string stderr_path;
};

// Starts the CLI with stdout and stderr sent to files in `dir`. `env` entries
// ("NAME=value") are added to the inherited environment.
Process Spawn(const testing::TempDir& dir, const std::vector<std::string>& args,
              const std::vector<std::string>& env = {}) {
  static int counter = 0;
  Process p;
  p.stdout_path = dir.File("out" + std::to_string(counter));
  p.stderr_path = dir.File("err" + std::to_string(counter));
  ++counter;

  std::vector<std::string> argv_storage = {RECAST_CLI_PATH};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  argv.push_back(nullptr);

  std::vector<std::string> env_storage;
  for (char** e = environ; *e != nullptr; ++e) {
    const std::string entry = *e;
    if (entry.rfind("RECAST_", 0) != 0) env_storage.push_back(entry);
  }
  env_storage.insert(env_storage.end(), env.begin(), env.end());
  std::vector<char*> envp;
  for (auto& e : env_storage) envp.push_back(e.data());
  envp.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO,
                                   p.stdout_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO,
                                   p.stderr_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  const int rc =
      posix_spawn(&p.pid, argv[0], &actions, nullptr, argv.data(), envp.data());
  posix_spawn_file_actions_destroy(&actions);
  EXPECT_EQ(rc, 0);
  return p;
}

int Wait(const Process& p) {
  int status = 0;
  waitpid(p.pid, &status, 0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

struct Result {
  int exit_code;
  std::string out;
  std::string err;
};

Result RunCli(const std::vector<std::string>& args,
              const std::vector<std::string>& env = {}) {
  testing::TempDir dir;
  const Process p = Spawn(dir, args, env);
  const int code = Wait(p);
  return {code, ReadFile(p.stdout_path), ReadFile(p.stderr_path)};
}

const std::string kModel = testing::DataPath("demo_model.rcst");
const std::string kEmbeddings = testing::DataPath("demo_embeddings.txt");

TEST(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunCli({}).exit_code, 1);
  EXPECT_EQ(RunCli({"frobnicate"}).exit_code, 1);
  EXPECT_EQ(
      RunCli({"train", "--corpus", "c", "--embeddings", "e", "--out", "o"})
          .exit_code,
      1);
  EXPECT_EQ(RunCli({"neighbors", "--embeddings", kEmbeddings, "--word", "x",
                    "--k", "many"})
                .exit_code,
            1);
}

TEST(CliTest, HelpAndVersionExitZero) {
  const Result help = RunCli({"--help"});
  EXPECT_EQ(help.exit_code, 0);
  EXPECT_THAT(help.out, HasSubstr("gen-corpus"));
  const Result version = RunCli({"--version"});
  EXPECT_EQ(version.exit_code, 0);
  EXPECT_THAT(version.out, HasSubstr("0.1.0"));
}

TEST(CliTest, GenCorpusIsDeterministic) {
  testing::TempDir dir;
  ASSERT_EQ(RunCli({"gen-corpus", "--seed", "7", "--n", "10", "--out",
                    dir.File("a.jsonl")})
                .exit_code,
            0);
  ASSERT_EQ(RunCli({"gen-corpus", "--seed", "7", "--n", "10", "--out",
                    dir.File("b.jsonl")})
                .exit_code,
            0);
  const std::string a = ReadFile(dir.File("a.jsonl"));
  EXPECT_EQ(a, ReadFile(dir.File("b.jsonl")));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 10);
}

TEST(CliTest, DataErrorsExitTwo) {
  testing::TempDir dir;
  const Result tiny =
      RunCli({"gen-corpus", "--n", "1", "--out", dir.File("c")});
  EXPECT_EQ(tiny.exit_code, 2);
  EXPECT_THAT(tiny.err, StartsWith("recast: invalid_argument: "));
  EXPECT_EQ(RunCli({"score", "--model", kModel, "--embeddings", kEmbeddings,
                    "--text", ""})
                .exit_code,
            2);
  EXPECT_EQ(RunCli({"score", "--model", kModel, "--embeddings", kEmbeddings,
                    "--text", "?!"})
                .exit_code,
            2);
  EXPECT_EQ(
      RunCli({"neighbors", "--embeddings", kEmbeddings, "--word", "qwzxv"})
          .exit_code,
      2);
  EXPECT_EQ(RunCli({"score", "--model", kEmbeddings, "--embeddings",
                    kEmbeddings, "--text", "x"})
                .exit_code,
            2);
}

TEST(CliTest, RuntimeErrorsExitThree) {
  testing::TempDir dir;
  const Result missing = RunCli({"score", "--model", dir.File("none.rcst"),
                                 "--embeddings", kEmbeddings, "--text", "x"});
  EXPECT_EQ(missing.exit_code, 3);
  EXPECT_THAT(missing.err, StartsWith("recast: io: "));
  EXPECT_EQ(
      RunCli({"gen-corpus", "--out", dir.File("no/such/dir.jsonl")}).exit_code,
      3);
}

TEST(CliTest, TrainIsBitReproducible) {
  testing::TempDir dir;
  ASSERT_EQ(RunCli({"gen-corpus", "--seed", "3", "--n", "80", "--out",
                    dir.File("c.jsonl")})
                .exit_code,
            0);
  std::vector<std::string> args = {"train",
                                   "--corpus",
                                   dir.File("c.jsonl"),
                                   "--embeddings",
                                   kEmbeddings,
                                   "--seed",
                                   "11",
                                   "--epochs",
                                   "2",
                                   "--model-dim",
                                   "8",
                                   "--heads",
                                   "2",
                                   "--ffn-dim",
                                   "8",
                                   "--out"};
  auto with_out = [&](const std::string& out) {
    auto a = args;
    a.push_back(out);
    return a;
  };
  const Result first = RunCli(with_out(dir.File("a.rcst")));
  ASSERT_EQ(first.exit_code, 0) << first.err;
  EXPECT_TRUE(std::regex_search(
      first.out,
      std::regex(R"(epoch 1/2  loss \d+\.\d{6}  accuracy \d\.\d{4})")));
  EXPECT_THAT(first.out, HasSubstr("saved rcst1-"));
  ASSERT_EQ(RunCli(with_out(dir.File("b.rcst"))).exit_code, 0);
  const std::string a = ReadFile(dir.File("a.rcst"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, ReadFile(dir.File("b.rcst")));
}

TEST(CliTest, ScoreJsonMatchesLibrary) {
  const Result result =
      RunCli({"score", "--model", kModel, "--embeddings", kEmbeddings, "--text",
              "You are so idiotic!", "--json"});
  ASSERT_EQ(result.exit_code, 0) << result.err;
  const EmbeddingStore store = *LoadEmbeddings(kEmbeddings);
  const Model model = *LoadModelFile(kModel, store);
  const ScoreResult direct = *Score(model, store, "You are so idiotic!");
  EXPECT_EQ(result.out,
            DumpJson(ScoreResponseJson(direct, ModelVersion(model))) + "\n");
  const Json body = Json::parse(result.out);
  double total = 0.0;
  for (const auto& w : body["words"]) total += w["attention"].get<double>();
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(CliTest, ScoreHumanReadable) {
  const Result result =
      RunCli({"score", "--model", kModel, "--embeddings", kEmbeddings, "--text",
              "this is an idiotic video"});
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_TRUE(std::regex_search(
      result.out, std::regex(R"(^score \d+/100  \(probability)")));
  EXPECT_THAT(result.out, HasSubstr("idiotic"));
}

TEST(CliTest, NeighborsMatchBruteForce) {
  const EmbeddingStore store = *LoadEmbeddings(kEmbeddings);
  const auto target = *store.Lookup("stupid");
  std::vector<std::pair<double, std::string>> ranked;
  for (std::size_t i = 0; i < store.size(); ++i) {
    const std::string& word = store.words()[i];
    if (word == "stupid") continue;
    const auto row = *store.Lookup(word);
    double dot = 0, nu = 0, nv = 0;
    for (std::size_t d = 0; d < store.dim(); ++d) {
      dot += double(target[d]) * row[d];
      nu += double(target[d]) * target[d];
      nv += double(row[d]) * row[d];
    }
    ranked.emplace_back(-dot / std::sqrt(nu * nv), word);
  }
  std::sort(ranked.begin(), ranked.end());

  const Result result = RunCli({"neighbors", "--embeddings", kEmbeddings,
                                "--word", "stupid", "--k", "6", "--json"});
  ASSERT_EQ(result.exit_code, 0) << result.err;
  const Json body = Json::parse(result.out);
  ASSERT_EQ(body.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(body[i]["word"], ranked[i].second);
    EXPECT_NEAR(body[i]["similarity"].get<double>(), -ranked[i].first, 1e-9);
  }

  const Result text = RunCli({"neighbors", "--embeddings", kEmbeddings,
                              "--word", "stupid", "--k", "2"});
  EXPECT_THAT(text.out, StartsWith(ranked[0].second + "\t"));
  EXPECT_EQ(std::count(text.out.begin(), text.out.end(), '\n'), 2);
  EXPECT_EQ(RunCli({"neighbors", "--embeddings", kEmbeddings, "--word",
                    "stupid", "--k", "0", "--json"})
                .out,
            "[]\n");
}

TEST(CliTest, AuditWritesReport) {
  testing::TempDir dir;
  ASSERT_EQ(RunCli({"gen-corpus", "--seed", "9", "--n", "20", "--out",
                    dir.File("c.jsonl")})
                .exit_code,
            0);
  const Result result =
      RunCli({"audit", "--model", kModel, "--embeddings", kEmbeddings,
              "--corpus", dir.File("c.jsonl"), "--out", dir.File("r.jsonl")});
  ASSERT_EQ(result.exit_code, 0) << result.err;
  EXPECT_THAT(result.out, HasSubstr("audited 20 rows (0 with errors)"));
  std::istringstream report(ReadFile(dir.File("r.jsonl")));
  int rows = 0;
  for (std::string line; std::getline(report, line); ++rows) {
    const Json row = Json::parse(line);
    EXPECT_TRUE(row["score"].is_number_integer());
  }
  EXPECT_EQ(rows, 20);
}

int WaitForPort(const std::string& stderr_path) {
  const std::regex listening(R"(listening on port (\d+))");
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::smatch m;
    const std::string err = ReadFile(stderr_path);
    if (std::regex_search(err, m, listening)) return std::stoi(m[1]);
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  return -1;
}

TEST(CliServeTest, EnvironmentConfiguresAndFlagsOverride) {
  testing::TempDir dir;
  const Process p =
      Spawn(dir, {"serve", "--model", kModel},
            {"RECAST_ADDR=127.0.0.1:0", "RECAST_MODEL=/nonexistent/model.rcst",
             "RECAST_EMBEDDINGS=" + kEmbeddings,
             "RECAST_FLAG_LOG=" + dir.File("flags.jsonl")});
  const int port = WaitForPort(p.stderr_path);
  ASSERT_GT(port, 0) << ReadFile(p.stderr_path);
  httplib::Client client("127.0.0.1", port);
  int health = 0;
  for (int attempt = 0; attempt < 500 && health != 200; ++attempt) {
    if (auto res = client.Get("/api/health")) health = res->status;
    if (health != 200)
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  EXPECT_EQ(health, 200);
  auto res = client.Post(
      "/api/flag",
      R"({"text":"a b","model_score":4,"verdict":"false_negative"})",
      "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  kill(p.pid, SIGTERM);
  EXPECT_EQ(Wait(p), 0);
  EXPECT_THAT(ReadFile(dir.File("flags.jsonl")), HasSubstr("false_negative"));
}

TEST(CliServeTest, BadModelFromEnvironmentExitsThree) {
  testing::TempDir dir;
  const Result result = RunCli(
      {"serve"},
      {"RECAST_ADDR=127.0.0.1:0", "RECAST_MODEL=/nonexistent/model.rcst",
       "RECAST_EMBEDDINGS=" + kEmbeddings, "RECAST_FLAG_LOG=" + dir.File("f")});
  EXPECT_EQ(result.exit_code, 3);
  EXPECT_THAT(result.err, HasSubstr("recast: io: "));
}

}  // namespace
}  // namespace recast
