// Copyright 2026 The makpabe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Errors go to stderr as one JSON object
// {"error": <code>, "message": <text>} with a nonzero exit status.

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "makpabe/envelope.hpp"
#include "makpabe/errors.hpp"
#include "makpabe/gamelab.hpp"
#include "makpabe/serialize.hpp"

namespace {

using namespace makpabe;
using nlohmann::json;
using scheme::GlobalParams;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, std::string_view data, bool secret = false) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, secret ? 0600 : 0644);
  if (fd < 0) throw Error(Errc::kIo, "cannot write " + path);
  // An existing file keeps its old mode through O_CREAT; tighten it.
  if (secret) ::fchmod(fd, 0600);
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n <= 0) {
      ::close(fd);
      throw Error(Errc::kIo, "short write to " + path);
    }
    off += static_cast<std::size_t>(n);
  }
  if (::close(fd) != 0) throw Error(Errc::kIo, "cannot close " + path);
}

Rng make_rng(const std::string& seed_flag) {
  std::string text = seed_flag;
  if (const char* env = std::getenv("MAKPABE_SEED"); env != nullptr && *env != '\0') text = env;
  if (text.empty()) return Rng::system();
  const auto seed = parse_seed_hex(text);
  if (!seed) throw CLI::ValidationError("seed", "expected up to 16 hex digits, got '" + text + "'");
  return Rng::from_seed(*seed);
}

void require_secure(const groups::PairingContext& ctx, bool insecure_ok) {
  if (!ctx.secret_safe() && !insecure_ok) {
    throw Error(Errc::kInsecureBackend,
                "the debug backend is not secure; pass --insecure-debug to use " + ctx.backend_id() + " artifacts");
  }
}

std::string matrix_entry(const groups::Scalar& x) {
  if (const auto v = x.to_small_signed()) return std::to_string(*v);
  return x.to_string();
}

int fail(std::string_view code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-authority key-policy attribute-based encryption"};
  app.require_subcommand(1);
  bool insecure = false;
  app.add_flag("--insecure-debug", insecure, "Allow artifacts on the non-secure debug backend");

  // authority setup
  auto* authority = app.add_subcommand("authority", "Authority management");
  authority->require_subcommand(1);
  auto* setup = authority->add_subcommand("setup", "Create an authority key pair");
  std::string universe_path, authority_id, backend = "curve", out_pub, out_master, seed;
  std::uint64_t prime = groups::PairingContext::kDefaultDebugPrime;
  setup->add_option("--universe", universe_path, "Universe file, one attribute per line")->required();
  setup->add_option("--id", authority_id, "Authority identifier")->required();
  setup->add_option("--backend", backend, "debug or curve")->check(CLI::IsMember({"debug", "curve"}));
  setup->add_option("--prime", prime, "Debug backend group order");
  setup->add_option("--out-pub", out_pub)->required();
  setup->add_option("--out-master", out_master)->required();
  setup->add_option("--seed", seed, "Hex seed for reproducible output");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Issue a user key for a policy");
  std::string master_path, policy_text, out_key;
  keygen->add_option("--master", master_path)->required();
  keygen->add_option("--policy", policy_text)->required();
  keygen->add_option("--out", out_key)->required();
  keygen->add_option("--seed", seed);

  // encrypt
  auto* encrypt = app.add_subcommand("encrypt", "Seal a file under an attribute set");
  std::string attrs, in_path, out_path;
  std::vector<std::string> pub_paths;
  encrypt->add_option("--attrs", attrs, "Comma separated attribute names")->required();
  encrypt->add_option("--pub", pub_paths, "Authority public key (repeatable)")->required();
  encrypt->add_option("--in", in_path)->required();
  encrypt->add_option("--out", out_path)->required();
  encrypt->add_option("--seed", seed);

  // decrypt
  auto* decrypt = app.add_subcommand("decrypt", "Open a sealed file");
  std::vector<std::string> key_paths;
  decrypt->add_option("--key", key_paths, "User key, one per authority (repeatable)")->required();
  decrypt->add_option("--in", in_path)->required();
  decrypt->add_option("--out", out_path)->required();

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Show envelope metadata");
  inspect->add_option("--in", in_path)->required();

  // policy compile
  auto* policy_cmd = app.add_subcommand("policy", "Policy tools");
  policy_cmd->require_subcommand(1);
  auto* compile = policy_cmd->add_subcommand("compile", "Print the share-generating matrix");
  bool as_json = false;
  compile->add_option("expr", policy_text)->required();
  compile->add_option("--universe", universe_path)->required();
  compile->add_option("--prime", prime, "Field order for the printed entries");
  compile->add_flag("--json", as_json);

  // gamelab run
  auto* gamelab_cmd = app.add_subcommand("gamelab", "Selective-security game harness");
  gamelab_cmd->require_subcommand(1);
  auto* run = gamelab_cmd->add_subcommand("run", "Play the game against a strategy");
  std::size_t trials = 1000;
  std::string adversary = "coin", transcript_path;
  bool random_t = false;
  run->add_option("--trials", trials);
  run->add_option("--prime", prime);
  run->add_option("--adversary", adversary)->check(CLI::IsMember(gamelab::adversary_names()));
  run->add_option("--seed", seed);
  run->add_option("--transcript", transcript_path, "JSON lines, one record per trial");
  run->add_flag("--random-t", random_t, "Use a random T instead of e(g,g)^abs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("Usage", e.what()) + 1;
  }

  try {
    if (setup->parsed()) {
      const auto& ctx = backend == "debug" ? groups::PairingContext::debug(prime) : groups::PairingContext::curve();
      require_secure(ctx, insecure);
      const GlobalParams gp(ctx, policy::AttributeUniverse::load(universe_path));
      Rng rng = make_rng(seed);
      const auto keys = scheme::authority_setup(gp, authority_id, rng);
      write_file(out_pub, toolkit::encode_public_key(gp, keys.pub) + "\n");
      write_file(out_master, toolkit::encode_master_key(gp, keys.master) + "\n", true);
    } else if (keygen->parsed()) {
      const std::string text = read_file(master_path);
      const auto hdr = toolkit::read_file_header(text);
      require_secure(hdr.params.context(), insecure);
      const auto master = toolkit::decode_master_key(text, hdr.params);
      const auto node = policy::parse_policy(policy_text, hdr.params.universe());
      Rng rng = make_rng(seed);
      const auto key = scheme::keygen(hdr.params, master, policy::to_lsss(node, hdr.params.context()), rng);
      write_file(out_key, toolkit::encode_user_key(hdr.params, key) + "\n");
    } else if (encrypt->parsed()) {
      const std::string first = read_file(pub_paths.at(0));
      const auto hdr = toolkit::read_file_header(first);
      require_secure(hdr.params.context(), insecure);
      std::vector<scheme::AuthorityPublicKey> pks;
      for (const auto& p : pub_paths) pks.push_back(toolkit::decode_public_key(read_file(p), hdr.params));
      const auto attributes = hdr.params.universe().parse_set(attrs);
      const std::string payload = read_file(in_path);
      Rng rng = make_rng(seed);
      const auto env = toolkit::seal(hdr.params, toolkit::as_bytes(payload), attributes, pks, rng);
      write_file(out_path, std::string_view(reinterpret_cast<const char*>(env.data()), env.size()));
    } else if (decrypt->parsed()) {
      const std::string first = read_file(key_paths.at(0));
      const auto hdr = toolkit::read_file_header(first);
      require_secure(hdr.params.context(), insecure);
      scheme::KeyRing ring;
      for (const auto& p : key_paths) {
        auto key = toolkit::decode_user_key(read_file(p), hdr.params);
        const std::string id = key.authority_id;
        if (!ring.emplace(id, std::move(key)).second)
          throw Error(Errc::kDuplicateAuthority, "two keys given for authority '" + id + "'");
      }
      const std::string env = read_file(in_path);
      const auto info = toolkit::inspect(toolkit::as_bytes(env));
      if (!info.production && !insecure)
        throw Error(Errc::kInsecureBackend, "envelope is marked non-production; pass --insecure-debug to open it");
      const auto payload = toolkit::open(hdr.params, toolkit::as_bytes(env), ring);
      write_file(out_path, std::string_view(reinterpret_cast<const char*>(payload.data()), payload.size()));
    } else if (inspect->parsed()) {
      const std::string env = read_file(in_path);
      const auto info = toolkit::inspect(toolkit::as_bytes(env));
      json j{{"backend", info.backend},
             {"production", info.production},
             {"aead", info.aead},
             {"universe_hash", info.universe_hash},
             {"attributes", info.attributes},
             {"authorities", info.authority_ids},
             {"group_elements", info.group_elements},
             {"header_bytes", info.header_bytes},
             {"body_bytes", info.body_bytes},
             {"payload_bytes", info.payload_bytes},
             {"total_bytes", env.size()}};
      std::cout << j.dump(2) << '\n';
    } else if (compile->parsed()) {
      const auto universe = policy::AttributeUniverse::load(universe_path);
      const auto& ctx = groups::PairingContext::debug(prime);
      const auto node = policy::parse_policy(policy_text, universe);
      const auto m = policy::to_lsss(node, ctx);
      if (as_json) {
        json rows = json::array();
        json rho = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
          json row = json::array();
          for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(matrix_entry(m.at(i, j)));
          rows.push_back(std::move(row));
          rho.push_back(universe.name(m.label(i)));
        }
        std::cout << json{{"policy", policy::to_string(node, universe)},
                          {"rows", m.rows()},
                          {"cols", m.cols()},
                          {"matrix", rows},
                          {"rho", rho}}
                         .dump()
                  << '\n';
      } else {
        std::cout << policy::to_string(node, universe) << '\n'
                  << m.rows() << " x " << m.cols() << " over Z_" << ctx.order_string() << '\n';
        for (std::size_t i = 0; i < m.rows(); ++i) {
          std::cout << universe.name(m.label(i)) << "\t[";
          for (std::size_t j = 0; j < m.cols(); ++j) std::cout << (j ? ", " : "") << matrix_entry(m.at(i, j));
          std::cout << "]\n";
        }
      }
    } else if (run->parsed()) {
      std::uint64_t master = 1;
      std::string text = seed;
      if (const char* env = std::getenv("MAKPABE_SEED"); env != nullptr && *env != '\0') text = env;
      if (!text.empty()) {
        const auto s = parse_seed_hex(text);
        if (!s) throw CLI::ValidationError("seed", "expected up to 16 hex digits, got '" + text + "'");
        master = *s;
      } else {
        Rng::system().fill(std::span(reinterpret_cast<std::uint8_t*>(&master), sizeof master));
      }
      gamelab::GameOptions opts;
      opts.prime = prime;
      opts.t_mode = random_t ? gamelab::TMode::kRandom : gamelab::TMode::kReal;
      std::ofstream transcript;
      if (!transcript_path.empty()) {
        transcript.open(transcript_path);
        if (!transcript) throw Error(Errc::kIo, "cannot write " + transcript_path);
        opts.transcript = &transcript;
      }
      auto adv = gamelab::make_adversary(adversary);
      const auto r = gamelab::run_selective_game(*adv, trials, master, opts);
      char seed_hex[19];
      std::snprintf(seed_hex, sizeof seed_hex, "%016llx", static_cast<unsigned long long>(master));
      std::cout << json{{"adversary", adversary},
                        {"prime", prime},
                        {"seed", seed_hex},
                        {"real_t", !random_t},
                        {"trials", r.trials},
                        {"wins", r.wins},
                        {"aborted", r.aborted},
                        {"decryptions", r.decryptions},
                        {"success_rate", r.success_rate},
                        {"advantage", r.advantage},
                        {"sigma", r.sigma},
                        {"ci95", {r.ci_low, r.ci_high}}}
                       .dump()
                << '\n';
    }
  } catch (const CLI::ValidationError& e) {
    return fail("Usage", e.what()) + 1;
  } catch (const Error& e) {
    return fail(errc_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail("Internal", e.what());
  }
  return 0;
}
