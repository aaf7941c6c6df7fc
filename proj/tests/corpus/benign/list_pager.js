// Client-side pager for short lists. Renders window plus controls.
function Pager(items, pageSize) {
    this.items = items;
    this.pageSize = pageSize;
    this.page = 0;
}

Pager.prototype.pageCount = function () {
    return Math.max(1, Math.ceil(this.items.length / this.pageSize));
};

Pager.prototype.current = function () {
    var from = this.page * this.pageSize;
    return this.items.slice(from, from + this.pageSize);
};

Pager.prototype.go = function (page) {
    var bounded = Math.max(0, Math.min(page, this.pageCount() - 1));
    this.page = bounded;
    return this.current();
};
