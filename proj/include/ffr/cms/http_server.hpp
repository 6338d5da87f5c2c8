// Copyright 2026 The FFR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP + JSON front end of the annotation store.
//
//   POST /tasks                        create a task, 201 {"id": ...}
//   GET  /tasks                        list task ids
//   GET  /tasks/{id}                   task summary (no references)
//   GET  /tasks/{id}/next?annotator=A  next item view for A
//   POST /tasks/{id}/scores            {annotator, item, phase, score}
//   GET  /tasks/{id}/report            CMS report
//
// Errors are {"error": <code>, "message": ...} with status 400 for invalid
// input, 404 for unknown task, item or annotator, and 409 for phase
// violations and duplicate submissions. An annotator who has finished both
// phases gets 200 {"complete": true} from /next.

#pragma once

#include <memory>
#include <string>

#include "ffr/cms/store.hpp"
#include "ffr/common/error.hpp"

namespace ffr::cms {

/// HTTP status for an error code raised by the store.
int http_status(Errc code) noexcept;

class HttpServer {
 public:
  explicit HttpServer(Store& store);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);

  /// Serves until stop(); call after bind().
  bool serve();

  void stop();

  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ffr::cms
