#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pidinst/canonical.hpp"
#include "pidinst/client.hpp"
#include "pidinst/datacite.hpp"
#include "pidinst/errors.hpp"
#include "pidinst/graph.hpp"
#include "pidinst/handle_record.hpp"
#include "pidinst/registry.hpp"
#include "pidinst/sensorml.hpp"
#include "pidinst/server.hpp"
#include "pidinst/validate.hpp"

namespace {

// Exit codes: 0 success, 1 domain failure, 2 I/O, syntax or usage failure.
constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_environment = 2;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw pidinst::error("cannot read file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw pidinst::error("cannot write file: " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::vector<pidinst::vocabulary_snapshot> vocabularies_for(const std::string& vocab_dir) {
  auto vocabularies = pidinst::default_vocabularies();
  if (vocab_dir.empty()) {
    return vocabularies;
  }
  // Directory snapshots replace built-ins with the same scheme id.
  for (auto& loaded : pidinst::load_vocabulary_dir(vocab_dir)) {
    bool replaced = false;
    for (auto& existing : vocabularies) {
      if (existing.scheme_id == loaded.scheme_id) {
        existing = loaded;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      vocabularies.push_back(std::move(loaded));
    }
  }
  return vocabularies;
}

int run_validate(const std::vector<std::string>& files, const std::string& vocab_dir,
                 bool json_output) {
  auto vocabularies = vocabularies_for(vocab_dir);
  bool any_invalid = false;
  for (const auto& file : files) {
    auto record = pidinst::parse_record(read_file(file));
    auto report = pidinst::validate(record, vocabularies);
    if (json_output) {
      pidinst::json j = report.to_json();
      j["file"] = file;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << file << ": " << (report.valid() ? "valid" : "INVALID") << " ("
                << report.error_count() << " error(s), " << report.warning_count()
                << " warning(s))\n";
      for (const auto& v : report.violations) {
        std::cout << "  " << pidinst::to_string(v.severity) << " " << pidinst::to_string(v.code)
                  << " at " << v.path << ": " << v.message << "\n";
      }
    }
    any_invalid = any_invalid || !report.valid();
  }
  return any_invalid ? exit_domain : exit_ok;
}

int year_of_latest_date(const pidinst::instrument_record& record) {
  int year = 0;
  for (const auto& d : record.dates) {
    year = std::max(year, d.date.year);
  }
  return year;
}

int run_convert(const std::string& file, const std::string& to, const std::string& publisher,
                int year, const std::string& policy, const std::string& resolver_base,
                bool info_types, const std::string& vocab_dir) {
  auto record = pidinst::parse_record(read_file(file));
  auto report = pidinst::validate(record, vocabularies_for(vocab_dir));
  if (!report.valid()) {
    std::cerr << "record does not validate (" << report.error_count()
              << " error(s)); run `pidinst validate " << file << "` for details\n";
    return exit_domain;
  }

  if (to == "canonical") {
    std::cout << pidinst::canonicalize(record);
    return exit_ok;
  }
  if (to == "handle") {
    pidinst::handle_options options;
    if (!resolver_base.empty()) {
      options.resolver_base = resolver_base;
    }
    options.emit_info_types = info_types;
    auto hr = pidinst::to_handle_record(record, pidinst::type_handle_map::defaults(), options);
    std::cout << pidinst::render_handle_record(hr);
    return exit_ok;
  }
  if (to == "datacite-json" || to == "datacite-xml") {
    pidinst::datacite_options options;
    options.publisher = publisher.empty() && !record.owners.empty()
                            ? record.owners.front().owner_name
                            : publisher;
    options.publication_year = year > 0 ? year : year_of_latest_date(record);
    if (options.publication_year == 0) {
      std::cerr << "the record has no dates; pass --year for the DataCite publicationYear\n";
      return exit_environment;
    }
    options.policy = policy == "manufacturer" ? pidinst::creator_policy::manufacturer_as_creator
                                              : pidinst::creator_policy::owner_as_creator;
    auto conversion = pidinst::to_datacite(record, options);
    for (const auto& w : conversion.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    std::cout << pidinst::render_datacite(conversion.record,
                                          to == "datacite-json"
                                              ? pidinst::datacite_format::json
                                              : pidinst::datacite_format::xml);
    return exit_ok;
  }
  std::cerr << "unknown output format: " << to
            << " (expected canonical, handle, datacite-json or datacite-xml)\n";
  return exit_environment;
}

std::vector<pidinst::instrument_record> load_corpus(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pidinst") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<pidinst::instrument_record> corpus;
  corpus.reserve(files.size());
  for (const auto& f : files) {
    corpus.push_back(pidinst::parse_record(read_file(f)));
  }
  return corpus;
}

pidinst::edge_direction direction_from(const std::string& token) {
  if (token == "in") {
    return pidinst::edge_direction::in;
  }
  if (token == "both") {
    return pidinst::edge_direction::both;
  }
  return pidinst::edge_direction::out;
}

void install_stop_handler(pidinst::registry_server* server) {
  static pidinst::registry_server* running = nullptr;
  running = server;
  auto handler = [](int) {
    if (running != nullptr) {
      running->stop();
    }
  };
  std::signal(SIGINT, handler);
  std::signal(SIGTERM, handler);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pidinst - instrument identification toolkit"};
  app.require_subcommand(1);

  std::string registry_url;
  std::string api_token;
  app.add_option("--registry-url", registry_url, "registry base URL")
      ->envname("PIDINST_REGISTRY_URL");
  app.add_option("--token", api_token, "API token for write operations")
      ->envname("PIDINST_API_TOKEN");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "validate canonical record files");
  std::vector<std::string> validate_files;
  std::string vocab_dir;
  bool validate_json = false;
  validate_cmd->add_option("files", validate_files, "record files")->required();
  validate_cmd->add_option("--vocab-dir", vocab_dir, "directory of vocabulary snapshots")
      ->envname("PIDINST_VOCAB_DIR");
  validate_cmd->add_flag("--json", validate_json, "emit reports as JSON");

  // convert
  auto* convert_cmd = app.add_subcommand("convert", "convert a record between serializations");
  std::string convert_file;
  std::string convert_to = "canonical";
  std::string publisher;
  int year = 0;
  std::string creator_policy = "owner";
  std::string resolver_base;
  bool info_types = false;
  convert_cmd->add_option("file", convert_file, "record file")->required();
  convert_cmd->add_option("--to", convert_to,
                          "canonical | handle | datacite-json | datacite-xml");
  convert_cmd->add_option("--publisher", publisher, "DataCite publisher (default: first owner)");
  convert_cmd->add_option("--year", year, "DataCite publicationYear (default: latest record date)");
  convert_cmd->add_option("--creator-policy", creator_policy, "owner | manufacturer");
  convert_cmd->add_option("--resolver-base", resolver_base,
                          "resolver URL base for identifier entries");
  convert_cmd->add_flag("--info-types", info_types,
                        "duplicate Name/LandingPage as lightweight handle entries");

  // mint / resolve / tombstone / check
  auto* mint_cmd = app.add_subcommand("mint", "register a record and print the new PID");
  std::string mint_file;
  mint_cmd->add_option("file", mint_file, "record file without an Identifier")->required();

  auto* resolve_cmd = app.add_subcommand("resolve", "resolve a PID against the registry");
  std::string resolve_pid;
  bool noredirect = false;
  resolve_cmd->add_option("pid", resolve_pid, "PID value, e.g. 21.T11998/XXXX-...")->required();
  resolve_cmd->add_flag("--noredirect", noredirect, "print the handle record instead");

  auto* tombstone_cmd = app.add_subcommand("tombstone", "retire a PID, keeping its metadata");
  std::string tombstone_pid;
  tombstone_cmd->add_option("pid", tombstone_pid, "PID value")->required();

  auto* check_cmd = app.add_subcommand("check", "probe landing-page liveness of record files");
  std::vector<std::string> check_files;
  check_cmd->add_option("files", check_files, "record files")->required();

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "related-identifier graph queries");
  graph_cmd->require_subcommand(1);
  std::string corpus_dir;
  graph_cmd->add_option("--corpus", corpus_dir, "directory of .pidinst records")->required();
  auto* graph_build = graph_cmd->add_subcommand("build", "print the edge list");
  bool graph_json = false;
  graph_build->add_flag("--json", graph_json, "emit a node/edge dump instead of edge lines");
  auto* graph_neighbors = graph_cmd->add_subcommand("neighbors", "edges touching a PID");
  std::string neighbors_pid;
  std::string relation_filter;
  std::string direction = "out";
  graph_neighbors->add_option("pid", neighbors_pid, "node PID")->required();
  graph_neighbors->add_option("--relation", relation_filter, "filter by relation token");
  graph_neighbors->add_option("--direction", direction, "out | in | both");
  auto* graph_dangling =
      graph_cmd->add_subcommand("dangling", "link targets without a corpus record");

  // sensorml
  auto* sensorml_cmd = app.add_subcommand("sensorml", "PID embedding in sensor descriptions");
  sensorml_cmd->require_subcommand(1);
  auto* sml_embed = sensorml_cmd->add_subcommand("embed", "embed a PID into a document");
  std::string sml_doc;
  std::string sml_pid;
  std::string sml_output;
  bool sml_in_place = false;
  bool sml_replace = false;
  std::string sml_resolver;
  sml_embed->add_option("document", sml_doc, "SensorML document")->required();
  sml_embed->add_option("--pid", sml_pid, "PID to embed")->required();
  sml_embed->add_option("--output", sml_output, "write here instead of stdout");
  sml_embed->add_flag("--in-place", sml_in_place, "rewrite the input document");
  sml_embed->add_flag("--replace", sml_replace, "replace a conflicting identifier");
  sml_embed->add_option("--resolver-base", sml_resolver, "resolver URL base");
  auto* sml_extract = sensorml_cmd->add_subcommand("extract", "print the embedded PID");
  std::string sml_extract_doc;
  sml_extract->add_option("document", sml_extract_doc, "SensorML document")->required();

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "run the registry service");
  std::string config_file;
  std::string serve_prefix;
  std::string serve_store;
  std::string serve_policy;
  std::string serve_host;
  int serve_port = -1;
  std::string serve_resolver;
  serve_cmd->add_option("--config", config_file, "JSON config file");
  serve_cmd->add_option("--prefix", serve_prefix, "handle prefix, e.g. 21.T11998");
  serve_cmd->add_option("--store", serve_store, "store directory");
  serve_cmd->add_option("--policy", serve_policy, "sequential | random-hex");
  serve_cmd->add_option("--host", serve_host, "bind address");
  serve_cmd->add_option("--port", serve_port, "bind port");
  serve_cmd->add_option("--resolver-base", serve_resolver, "resolver base URL for handle records");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) {
      return run_validate(validate_files, vocab_dir, validate_json);
    }

    if (convert_cmd->parsed()) {
      return run_convert(convert_file, convert_to, publisher, year, creator_policy, resolver_base,
                         info_types, vocab_dir);
    }

    if (mint_cmd->parsed()) {
      if (registry_url.empty()) {
        std::cerr << "--registry-url (or PIDINST_REGISTRY_URL) is required\n";
        return exit_environment;
      }
      pidinst::registry_client client(registry_url, api_token);
      std::cout << client.mint(read_file(mint_file)) << "\n";
      return exit_ok;
    }

    if (resolve_cmd->parsed()) {
      if (registry_url.empty()) {
        std::cerr << "--registry-url (or PIDINST_REGISTRY_URL) is required\n";
        return exit_environment;
      }
      pidinst::registry_client client(registry_url, api_token);
      auto result = client.resolve(resolve_pid, noredirect);
      if (result.status == 410) {
        std::cerr << "PID is tombstoned; printing its last metadata\n";
        std::cout << result.body;
        return exit_domain;
      }
      if (noredirect) {
        auto hr = pidinst::parse_handle_record(result.body);
        std::cout << pidinst::render_handle_record(hr);
      } else {
        std::cout << result.landing_page << "\n";
      }
      return exit_ok;
    }

    if (tombstone_cmd->parsed()) {
      if (registry_url.empty()) {
        std::cerr << "--registry-url (or PIDINST_REGISTRY_URL) is required\n";
        return exit_environment;
      }
      pidinst::registry_client client(registry_url, api_token);
      client.tombstone(tombstone_pid);
      return exit_ok;
    }

    if (check_cmd->parsed()) {
      for (const auto& file : check_files) {
        auto record = pidinst::parse_record(read_file(file));
        auto status = pidinst::probe_url(record.landing_page);
        std::cout << (status ? std::to_string(*status) : std::string("unreachable")) << "\t"
                  << record.landing_page << "\t" << file << "\n";
      }
      return exit_ok;
    }

    if (graph_cmd->parsed()) {
      auto graph = pidinst::pid_graph::build(load_corpus(corpus_dir));
      if (graph_build->parsed()) {
        if (graph_json) {
          std::cout << graph.to_json().dump(2) << "\n";
        } else {
          std::cout << graph.edge_list();
        }
        return exit_ok;
      }
      if (graph_neighbors->parsed()) {
        std::optional<pidinst::relation_type> filter;
        if (!relation_filter.empty()) {
          filter = pidinst::relation_type(relation_filter);
        }
        auto edges = graph.neighbors(neighbors_pid, filter, direction_from(direction));
        for (const auto& e : edges) {
          std::cout << e.from << "\t" << e.relation << "\t" << e.to << "\n";
        }
        return exit_ok;
      }
      if (graph_dangling->parsed()) {
        for (const auto& value : graph.dangling()) {
          std::cout << value << "\n";
        }
        return exit_ok;
      }
    }

    if (sensorml_cmd->parsed()) {
      if (sml_embed->parsed()) {
        auto doc = read_file(sml_doc);
        auto policy = sml_replace ? pidinst::sensorml::conflict_policy::replace
                                  : pidinst::sensorml::conflict_policy::fail;
        auto resolver = sml_resolver.empty() ? std::string(pidinst::default_handle_resolver)
                                             : sml_resolver;
        auto embedded =
            pidinst::sensorml::embed_identifier(doc, pidinst::pid::infer(sml_pid), policy,
                                                resolver);
        if (sml_in_place) {
          write_file(sml_doc, embedded);
        } else if (!sml_output.empty()) {
          write_file(sml_output, embedded);
        } else {
          std::cout << embedded;
        }
        return exit_ok;
      }
      if (sml_extract->parsed()) {
        auto extracted = pidinst::sensorml::extract_identifier(read_file(sml_extract_doc));
        if (!extracted) {
          std::cerr << "no instrument persistent identifier term in " << sml_extract_doc << "\n";
          return exit_domain;
        }
        std::cout << extracted->value() << "\n";
        return exit_ok;
      }
    }

    if (serve_cmd->parsed()) {
      pidinst::registry_config config;
      if (!config_file.empty()) {
        config = pidinst::load_registry_config(config_file);
      } else {
        pidinst::apply_env_overrides(config);
      }
      if (!serve_prefix.empty()) {
        config.prefix = serve_prefix;
      }
      if (!serve_store.empty()) {
        config.store_path = serve_store;
      }
      if (!serve_policy.empty()) {
        config.policy = pidinst::suffix_policy_from_string(serve_policy);
      }
      if (!serve_host.empty()) {
        config.bind_address = serve_host;
      }
      if (serve_port >= 0) {
        config.port = serve_port;
      }
      if (!serve_resolver.empty()) {
        config.base_resolver_url = serve_resolver;
      }
      if (!api_token.empty()) {
        config.api_token = api_token;
      }
      if (config.store_path.empty()) {
        std::cerr << "a store path is required (--store, config file or PIDINST_STORE_PATH)\n";
        return exit_environment;
      }
      pidinst::registry reg(config);
      pidinst::registry_server server(reg);
      int port = server.start(config.bind_address, config.port);
      install_stop_handler(&server);
      std::cerr << "listening on " << config.bind_address << ":" << port << " (prefix "
                << config.prefix << ", store " << config.store_path.string() << ")\n";
      // start() runs the accept loop on a background thread; park until
      // a signal calls stop().
      server.wait();
      return exit_ok;
    }
  } catch (const pidinst::syntax_error& e) {
    std::cerr << e.what() << "\n";
    return exit_environment;
  } catch (const pidinst::unknown_property_error& e) {
    std::cerr << e.what() << "\n";
    return exit_environment;
  } catch (const pidinst::type_mismatch_error& e) {
    std::cerr << e.what() << "\n";
    return exit_environment;
  } catch (const pidinst::malformed_document_error& e) {
    std::cerr << e.what() << "\n";
    return exit_environment;
  } catch (const pidinst::conflicting_identifier_error& e) {
    std::cerr << e.what() << "\n";
    return exit_domain;
  } catch (const pidinst::node_not_found_error& e) {
    std::cerr << e.what() << "\n";
    return exit_domain;
  } catch (const pidinst::duplicate_instrument_pid_error& e) {
    std::cerr << e.what() << "\n";
    return exit_domain;
  } catch (const pidinst::error& e) {
    std::cerr << e.what() << "\n";
    return exit_domain;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return exit_environment;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return exit_environment;
  }

  return exit_environment;
}
