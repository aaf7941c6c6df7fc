var frame = "%u0076%u0061%u0072%u0020%u0074%u0030%u0020%u003d%u0020%u0038%u0037%u0033%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0031%u0020%u003d%u0020%u0036%u0032%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0032%u0020%u003d%u0020%u0031%u0037%u0034%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0033%u0020%u003d%u0020%u0038%u0035%u0035%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0034%u0020%u003d%u0020%u0037%u0039%u0034%u003b%u0020%u0076%u0061%u0072%u0020%u006d%u0061%u0072%u006b%u0020%u003d%u0020%u0022%u0038%u0061%u0037%u0061%u0065%u0036%u0038%u0039%u0035%u0064%u0066%u0062%u0032%u0031%u0032%u0063%u0033%u0035%u0035%u0038%u0061%u0030%u0039%u0035%u0034%u0039%u0030%u0035%u0035%u0039%u0062%u0062%u0031%u0038%u0062%u0063%u0034%u0034%u0062%u0039%u0033%u0033%u0036%u0035%u0039%u0030%u0063%u0038%u0022%u003b%u0020%u0077%u0068%u0069%u006c%u0065%u0020%u0028%u0074%u0030%u002d%u002d%u0020%u003e%u0020%u0030%u0029%u0020%u007b%u0020%u0074%u0031%u0020%u002b%u003d%u0020%u0074%u0030%u0020%u002a%u0020%u0032%u003b%u0020%u007d%u0020%u0064%u006f%u0063%u0075%u006d%u0065%u006e%u0074%u002e%u0074%u0069%u0074%u006c%u0065%u0020%u003d%u0020%u006d%u0061%u0072%u006b%u002e%u0073%u006c%u0069%u0063%u0065%u0028%u0030%u002c%u0020%u0038%u0029%u003b";
function unwrap(s) { return unescape(s); }
eval(unwrap(frame));
