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

#include <string.h>

#include "recast/recast.h"

int recast_header_compiles_as_c(void) {
  recast_train_options options;
  recast_server_config config;
  recast_train_options_init(&options);
  recast_server_config_init(&config);
  return strcmp(recast_status_name(RECAST_OK), "ok") == 0 &&
         options.epochs > 0 && config.default_k > 0;
}
